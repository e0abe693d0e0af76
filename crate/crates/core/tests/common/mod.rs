#![allow(dead_code)]

use hypergroup::families::{
    build_k_rs, cyclic_group_table, group_hypergroup, in_region, klein_four_table, rational_point_from_slope,
    symmetric_group_s3_table,
};
use hypergroup::rational::rat;
use hypergroup::{Hypergroup, Rational};

pub fn z(n: usize) -> Hypergroup {
    group_hypergroup(&cyclic_group_table(n)).unwrap()
}

pub fn v4() -> Hypergroup {
    group_hypergroup(&klein_four_table()).unwrap()
}

pub fn s3() -> Hypergroup {
    group_hypergroup(&symmetric_group_s3_table()).unwrap()
}

/// Named reference groups used across the suites.
pub fn reference_groups() -> Vec<(&'static str, Hypergroup)> {
    vec![("Z2", z(2)), ("Z3", z(3)), ("Z4", z(4)), ("V4", v4()), ("Z5", z(5)), ("S3", s3())]
}

/// The conic point obtained from slope -6/5.
pub fn p_star() -> (Rational, Rational) {
    (rat(197, 468), rat(7, 156))
}

pub fn k_star() -> Hypergroup {
    let (r, s) = p_star();
    build_k_rs(&r, &s).unwrap()
}

/// In-region conic points from a sweep of rational slopes.
pub fn conic_points(count: usize) -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    for den in 1..=40i64 {
        for num in -200..=0i64 {
            let t = rat(num, den);
            if let Ok((r, s)) = rational_point_from_slope(&t) {
                if in_region(&r, &s) && !out.contains(&(r.clone(), s.clone())) {
                    out.push((r, s));
                    if out.len() == count {
                        return out;
                    }
                }
            }
        }
    }
    out
}
