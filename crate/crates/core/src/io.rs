//! Canonical JSON documents for hypergroups.
//!
//! ```text
//! {"order":2,"star":[0,1],"table":[[["1/1","0/1"],["0/1","1/1"]],[["0/1","1/1"],["1/1","0/1"]]]}
//! ```
//!
//! Keys appear in the order `order`, `star`, `table`; every rational is a
//! `num/den` string in lowest terms; the text ends with a newline. Parsing
//! checks shape and the involution but not the hypergroup axioms.

use serde::{Deserialize, Serialize};

use crate::algebra::{Hypergroup, StarInvolution};
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypergroupDocument {
    pub order: usize,
    pub star: Vec<usize>,
    pub table: Vec<Vec<Vec<String>>>,
}

impl HypergroupDocument {
    pub fn from_hypergroup(h: &Hypergroup) -> Self {
        let n = h.order();
        let table =
            (0..n).map(|i| (0..n).map(|j| h.row(i, j).iter().map(format_rational).collect()).collect()).collect();
        Self { order: n, star: h.star().as_slice().to_vec(), table }
    }

    pub fn to_hypergroup(&self) -> Result<Hypergroup> {
        let n = self.order;
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        if self.star.len() != n {
            return Err(Error::MalformedDocument(format!("star has {} entries, expected {n}", self.star.len())));
        }
        let star = StarInvolution::new(self.star.clone())?;
        if self.table.len() != n {
            return Err(Error::MalformedDocument(format!("table has {} rows, expected {n}", self.table.len())));
        }
        let mut flat = Vec::with_capacity(n * n * n);
        for (i, plane) in self.table.iter().enumerate() {
            if plane.len() != n {
                return Err(Error::MalformedDocument(format!("table[{i}] has {} rows, expected {n}", plane.len())));
            }
            for (j, row) in plane.iter().enumerate() {
                if row.len() != n {
                    return Err(Error::MalformedDocument(format!(
                        "table[{i}][{j}] has {} entries, expected {n}",
                        row.len()
                    )));
                }
                for text in row {
                    flat.push(parse_rational(text)?);
                }
            }
        }
        Hypergroup::new(star, flat)
    }
}

pub fn serialize(h: &Hypergroup) -> String {
    let mut text =
        serde_json::to_string(&HypergroupDocument::from_hypergroup(h)).expect("document serialization is infallible");
    text.push('\n');
    text
}

pub fn parse(text: &str) -> Result<Hypergroup> {
    let doc: HypergroupDocument = serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))?;
    doc.to_hypergroup()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cyclic_group_table, group_hypergroup};

    const Z2: &str = "{\"order\":2,\"star\":[0,1],\"table\":[[[\"1/1\",\"0/1\"],[\"0/1\",\"1/1\"]],[[\"0/1\",\"1/1\"],[\"1/1\",\"0/1\"]]]}\n";

    #[test]
    fn z2_document_is_canonical() {
        let h = group_hypergroup(&cyclic_group_table(2)).unwrap();
        assert_eq!(serialize(&h), Z2);
        assert_eq!(parse(Z2).unwrap(), h);
    }

    #[test]
    fn rejects_malformed_documents() {
        let zero_den = Z2.replacen("\"1/1\"", "\"16/0\"", 1);
        assert!(matches!(parse(&zero_den), Err(Error::MalformedRational(_))));

        let dup = "{\"order\":2,\"order\":2,\"star\":[0,1],\"table\":[]}";
        assert!(matches!(parse(dup), Err(Error::MalformedDocument(_))));

        let bad_star = Z2.replace("\"star\":[0,1]", "\"star\":[1,0]");
        assert!(matches!(parse(&bad_star), Err(Error::InvalidInvolution(_))));

        let wrong_order = Z2.replace("\"order\":2", "\"order\":3");
        assert!(parse(&wrong_order).is_err());

        let extra = Z2.replace("{\"order\"", "{\"name\":\"z2\",\"order\"");
        assert!(parse(&extra).is_err());

        assert!(parse("not json").is_err());
    }

    #[test]
    fn parsing_does_not_validate_axioms() {
        let text = Z2.replace("[[\"0/1\",\"1/1\"],[\"1/1\",\"0/1\"]]]", "[[\"0/1\",\"1/1\"],[\"1/2\",\"0/1\"]]]");
        assert!(parse(&text).is_ok());
    }
}
