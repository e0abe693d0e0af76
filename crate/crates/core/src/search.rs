//! Floating-point feasibility search for structure tensors of a given order
//! and star structure, and sampling of the `K(r,s)` parameter region.
//!
//! The search eliminates every linear constraint up front: unit rows are
//! fixed, star compatibility ties each row `(i, j)` to its partner
//! `(star j, star i)`, and the support pattern removes the `c_0` entries
//! that must vanish. What remains is a product of probability simplices, one
//! per row orbit. Each restart draws a uniform point on every simplex and
//! runs a projected Levenberg-Marquardt iteration on the associativity
//! residuals.

use nalgebra::{DMatrix, DVector};
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;

use crate::algebra::{Hypergroup, StarInvolution};
use crate::error::{Error, Result};
use crate::families::{conic_value, in_region};
use crate::rational::{int, rationalize, to_f64, Rational};

/// Smallest admissible `c_0` coefficient of `δ_i ∘ δ_{star i}`. Below it the
/// support axiom is treated as violated.
pub const SUPPORT_FLOOR: f64 = 1e-4;

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    pub order: usize,
    pub star: StarInvolution,
    pub restarts: usize,
    pub max_iterations: usize,
    pub residual_tolerance: f64,
    pub commutativity_tolerance: f64,
    pub seed: u64,
}

impl SearchConfig {
    pub fn new(star: StarInvolution) -> Self {
        Self {
            order: star.order(),
            star,
            restarts: 100,
            max_iterations: 400,
            residual_tolerance: 1e-9,
            commutativity_tolerance: 1e-7,
            seed: 0,
        }
    }

    fn check(&self) -> Result<()> {
        if self.star.order() != self.order {
            return Err(Error::InvalidConfig(format!(
                "star has order {}, config order is {}",
                self.star.order(),
                self.order
            )));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidConfig("restarts must be at least 1".into()));
        }
        let positive = |x: f64| x > 0.0;
        if !positive(self.residual_tolerance) || !positive(self.commutativity_tolerance) {
            return Err(Error::InvalidConfig("tolerances must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub restart: usize,
    /// Row-major `[i][j][k]` tensor over `order^3` entries.
    pub tensor: Vec<f64>,
    pub residual: f64,
    /// `max |m[i][j][k] - m[j][i][k]|`.
    pub commutativity_defect: f64,
}

impl Candidate {
    pub fn is_commutative(&self, tolerance: f64) -> bool {
        self.commutativity_defect < tolerance
    }

    /// Nearest fractions with denominator at most `max_den`, as an exact
    /// tensor for re-checking with the validator.
    pub fn rationalize(&self, star: &StarInvolution, max_den: u64) -> Result<Hypergroup> {
        Hypergroup::new(star.clone(), self.tensor.iter().map(|&x| rationalize(x, max_den)).collect())
    }
}

pub fn float_image(h: &Hypergroup) -> Vec<f64> {
    h.table().iter().map(to_f64).collect()
}

pub fn commutativity_defect(tensor: &[f64], order: usize) -> f64 {
    let n = order;
    let mut defect: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                defect = defect.max((tensor[(i * n + j) * n + k] - tensor[(j * n + i) * n + k]).abs());
            }
        }
    }
    defect
}

/// Sum of squared violations of every hypergroup constraint: associativity,
/// unit rows, row sums and nonnegativity, the `c_0` support pattern
/// (including [`SUPPORT_FLOOR`]), and star compatibility.
pub fn residual_objective(tensor: &[f64], star: &StarInvolution) -> Result<f64> {
    let n = star.order();
    if tensor.len() != n * n * n {
        return Err(Error::DimensionMismatch { expected: n * n * n, actual: tensor.len() });
    }
    let at = |i: usize, j: usize, k: usize| tensor[(i * n + j) * n + k];
    let mut total = 0.0;

    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for m in 0..n {
                    let mut d = 0.0;
                    for t in 0..n {
                        d += at(i, j, t) * at(t, k, m) - at(j, k, t) * at(i, t, m);
                    }
                    total += d * d;
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let mut sum = 0.0;
            for k in 0..n {
                let m = at(i, j, k);
                sum += m;
                if m < 0.0 {
                    total += m * m;
                }
                if i == 0 || j == 0 {
                    let target = if i + j == k { 1.0 } else { 0.0 };
                    total += (m - target).powi(2);
                }
                let partner = at(star.apply(j), star.apply(i), star.apply(k));
                total += (m - partner).powi(2);
            }
            total += (sum - 1.0).powi(2);
            let unit = at(i, j, 0);
            if j == star.apply(i) {
                if unit < SUPPORT_FLOOR {
                    total += (SUPPORT_FLOOR - unit).powi(2);
                }
            } else {
                total += unit * unit;
            }
        }
    }
    Ok(total)
}

/// One free coordinate: a simplex mass spread over `targets`, each target
/// receiving `mass / share`.
#[derive(Clone, Debug)]
struct Coordinate {
    targets: Vec<usize>,
    share: f64,
    /// Tensor index of the `c_0` entry on a `(i, star i)` row.
    unit_entry: bool,
}

/// Free parameters after eliminating the linear constraints.
#[derive(Clone, Debug)]
struct Layout {
    order: usize,
    /// Simplices, each a list of coordinate indices.
    blocks: Vec<Vec<usize>>,
    coords: Vec<Coordinate>,
    base: Vec<f64>,
}

impl Layout {
    fn new(star: &StarInvolution) -> Self {
        let n = star.order();
        let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
        let mut base = vec![0.0; n * n * n];
        for a in 0..n {
            base[idx(0, a, a)] = 1.0;
            base[idx(a, 0, a)] = 1.0;
        }
        let mut blocks = Vec::new();
        let mut coords = Vec::new();
        for i in 1..n {
            for j in 1..n {
                let partner = (star.apply(j), star.apply(i));
                if partner < (i, j) {
                    continue;
                }
                let mut block = Vec::new();
                if partner == (i, j) {
                    // j = star(i): entries k and star(k) coincide, c_0 is allowed
                    for k in 0..n {
                        let kb = star.apply(k);
                        if kb < k {
                            continue;
                        }
                        let targets = if kb == k { vec![idx(i, j, k)] } else { vec![idx(i, j, k), idx(i, j, kb)] };
                        block.push(coords.len());
                        coords.push(Coordinate { share: targets.len() as f64, targets, unit_entry: k == 0 });
                    }
                } else {
                    for k in 1..n {
                        block.push(coords.len());
                        coords.push(Coordinate {
                            targets: vec![idx(i, j, k), idx(partner.0, partner.1, star.apply(k))],
                            share: 1.0,
                            unit_entry: false,
                        });
                    }
                }
                blocks.push(block);
            }
        }
        Self { order: n, blocks, coords, base }
    }

    fn tensor(&self, mass: &[f64]) -> Vec<f64> {
        let mut t = self.base.clone();
        for (c, &y) in self.coords.iter().zip(mass) {
            for &e in &c.targets {
                t[e] = y / c.share;
            }
        }
        t
    }

    fn random_point(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let mut mass = vec![0.0; self.coords.len()];
        for block in &self.blocks {
            let draws: Vec<f64> = block.iter().map(|_| Exp1.sample(rng)).collect();
            let total: f64 = draws.iter().sum();
            for (&c, d) in block.iter().zip(draws) {
                mass[c] = d / total;
            }
        }
        mass
    }

    fn project(&self, mass: &mut [f64]) {
        for block in &self.blocks {
            let mut v: Vec<f64> = block.iter().map(|&c| mass[c]).collect();
            project_to_simplex(&mut v);
            for (&c, x) in block.iter().zip(v) {
                mass[c] = x;
            }
        }
    }

    fn residual_len(&self) -> usize {
        let m = self.order - 1;
        m * m * m * self.order + self.coords.iter().filter(|c| c.unit_entry).count()
    }

    /// Associativity residuals over triples of non-unit elements, followed by
    /// the support-floor hinges.
    fn residuals(&self, mass: &[f64], t: &[f64]) -> Vec<f64> {
        let n = self.order;
        let at = |i: usize, j: usize, k: usize| t[(i * n + j) * n + k];
        let mut out = Vec::with_capacity(self.residual_len());
        for i in 1..n {
            for j in 1..n {
                for k in 1..n {
                    for m in 0..n {
                        let mut d = 0.0;
                        for s in 0..n {
                            d += at(i, j, s) * at(s, k, m) - at(j, k, s) * at(i, s, m);
                        }
                        out.push(d);
                    }
                }
            }
        }
        for (c, &y) in self.coords.iter().zip(mass) {
            if c.unit_entry {
                out.push((SUPPORT_FLOOR - y).max(0.0));
            }
        }
        out
    }

    /// Jacobian of [`Self::residuals`] with respect to the masses. Each
    /// residual is bilinear in the tensor, so every column is assembled from
    /// the four positions a target entry can occupy.
    fn jacobian(&self, mass: &[f64], t: &[f64]) -> DMatrix<f64> {
        let n = self.order;
        let m1 = n - 1;
        let at = |i: usize, j: usize, k: usize| t[(i * n + j) * n + k];
        let row = |i: usize, j: usize, k: usize, m: usize| (((i - 1) * m1 + (j - 1)) * m1 + (k - 1)) * n + m;
        let mut jac = DMatrix::zeros(self.residual_len(), self.coords.len());
        let mut hinge = m1 * m1 * m1 * n;
        for (col, c) in self.coords.iter().enumerate() {
            let d = 1.0 / c.share;
            for &e in &c.targets {
                let (a, b, cc) = (e / (n * n), (e / n) % n, e % n);
                // as m[i][j][s] with (i, j, s) = (a, b, cc)
                for k in 1..n {
                    for m in 0..n {
                        jac[(row(a, b, k, m), col)] += d * at(cc, k, m);
                    }
                }
                // as m[s][k][m] with (s, k, m) = (a, b, cc)
                for i in 1..n {
                    for j in 1..n {
                        jac[(row(i, j, b, cc), col)] += d * at(i, j, a);
                    }
                }
                // as m[j][k][s] with (j, k, s) = (a, b, cc)
                for i in 1..n {
                    for m in 0..n {
                        jac[(row(i, a, b, m), col)] -= d * at(i, cc, m);
                    }
                }
                // as m[i][s][m] with (i, s, m) = (a, b, cc)
                for j in 1..n {
                    for k in 1..n {
                        jac[(row(a, j, k, cc), col)] -= d * at(j, k, b);
                    }
                }
            }
            if c.unit_entry {
                if mass[col] < SUPPORT_FLOOR {
                    jac[(hinge, col)] = -1.0;
                }
                hinge += 1;
            }
        }
        jac
    }
}

/// Euclidean projection onto `{x ≥ 0, Σx = 1}`.
pub fn project_to_simplex(v: &mut [f64]) {
    if v.is_empty() {
        return;
    }
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut theta = 0.0;
    for (idx, &x) in sorted.iter().enumerate() {
        cumulative += x;
        let candidate = (cumulative - 1.0) / (idx + 1) as f64;
        if x - candidate > 0.0 {
            theta = candidate;
        }
    }
    for x in v.iter_mut() {
        *x = (*x - theta).max(0.0);
    }
}

fn cost(r: &[f64]) -> f64 {
    r.iter().map(|x| x * x).sum()
}

/// Projected Levenberg-Marquardt from `mass`. The last coordinate of each
/// block is eliminated through the sum-to-one constraint; the step is
/// repaired by projecting every block back onto its simplex.
fn minimize(layout: &Layout, mut mass: Vec<f64>, max_iterations: usize) -> Vec<f64> {
    let free: Vec<(usize, usize)> = layout
        .blocks
        .iter()
        .flat_map(|block| {
            let last = *block.last().expect("blocks are nonempty");
            block[..block.len() - 1].iter().map(move |&c| (c, last))
        })
        .collect();
    let mut t = layout.tensor(&mass);
    let mut r = layout.residuals(&mass, &t);
    let mut current = cost(&r);
    let mut damping = 1e-3;

    for _ in 0..max_iterations {
        if current < 1e-30 {
            break;
        }
        let full = layout.jacobian(&mass, &t);
        let jac = DMatrix::from_fn(full.nrows(), free.len(), |row, col| {
            let (c, last) = free[col];
            full[(row, c)] - full[(row, last)]
        });
        let jt = jac.transpose();
        let normal = &jt * &jac;
        let gradient = &jt * DVector::from_column_slice(&r);
        if gradient.amax() < 1e-30 {
            break;
        }

        let mut improved = false;
        while damping < 1e16 {
            let mut system = normal.clone();
            for d in 0..system.nrows() {
                system[(d, d)] += damping * (1.0 + normal[(d, d)]);
            }
            let Some(chol) = system.cholesky() else {
                damping *= 10.0;
                continue;
            };
            let step = chol.solve(&gradient);
            let mut trial = mass.clone();
            for (col, &(c, last)) in free.iter().enumerate() {
                trial[c] -= step[col];
                trial[last] += step[col];
            }
            layout.project(&mut trial);
            let trial_t = layout.tensor(&trial);
            let trial_r = layout.residuals(&trial, &trial_t);
            let trial_cost = cost(&trial_r);
            if trial_cost < current {
                mass = trial;
                t = trial_t;
                r = trial_r;
                current = trial_cost;
                damping = (damping / 3.0).max(1e-12);
                improved = true;
                break;
            }
            damping *= 4.0;
        }
        if !improved {
            break;
        }
    }
    mass
}

fn candidate_from(layout: &Layout, star: &StarInvolution, restart: usize, mass: &[f64]) -> Candidate {
    let tensor = layout.tensor(mass);
    let residual = residual_objective(&tensor, star).expect("layout matches star");
    let commutativity_defect = commutativity_defect(&tensor, layout.order);
    Candidate { restart, tensor, residual, commutativity_defect }
}

/// Runs every restart (restart `k` is seeded with `seed + k`) and returns
/// the candidates below the residual tolerance, sorted by residual and then
/// by restart index.
pub fn feasibility_search(config: &SearchConfig) -> Result<Vec<Candidate>> {
    config.check()?;
    let layout = Layout::new(&config.star);
    let mut found: Vec<Candidate> = (0..config.restarts)
        .into_par_iter()
        .map(|restart| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(restart as u64));
            let start = layout.random_point(&mut rng);
            let mass = minimize(&layout, start, config.max_iterations);
            candidate_from(&layout, &config.star, restart, &mass)
        })
        .filter(|c| c.residual < config.residual_tolerance)
        .collect();
    found.sort_by(|a, b| a.residual.total_cmp(&b.residual).then(a.restart.cmp(&b.restart)));
    Ok(found)
}

/// Local refinement from a given tensor. The tensor is first read into the
/// constrained parameterization (partner rows and the removed `c_0` entries
/// are taken from the representative rows) and projected.
pub fn refine(tensor: &[f64], star: &StarInvolution, max_iterations: usize) -> Result<Candidate> {
    let n = star.order();
    if tensor.len() != n * n * n {
        return Err(Error::DimensionMismatch { expected: n * n * n, actual: tensor.len() });
    }
    let layout = Layout::new(star);
    let mut mass: Vec<f64> = layout
        .coords
        .iter()
        .map(|c| c.targets.iter().map(|&e| tensor[e]).sum::<f64>() / c.targets.len() as f64 * c.share)
        .collect();
    layout.project(&mut mass);
    let mass = minimize(&layout, mass, max_iterations);
    Ok(candidate_from(&layout, star, 0, &mass))
}

#[derive(Clone, Debug, PartialEq)]
pub struct RegionRow {
    pub r: Rational,
    pub s: Rational,
    pub in_region: bool,
    pub conic_value: f64,
    pub admissible: bool,
}

/// Grid over `[0, 1/2)²` with spacing `step`. A point is admissible when it
/// is in the region and `|F(r,s)| < 3·step`.
pub fn sample_region(step: &Rational) -> Result<Vec<RegionRow>> {
    let half = Rational::new(1.into(), 2.into());
    if !(step > &Rational::zero() && step < &half) {
        return Err(Error::InvalidStep);
    }
    let band = to_f64(&(int(3) * step));
    let mut axis = Vec::new();
    let mut x = Rational::zero();
    while x < half {
        axis.push(x.clone());
        x += step;
    }
    let mut rows = Vec::with_capacity(axis.len() * axis.len());
    for r in &axis {
        for s in &axis {
            let inside = in_region(r, s);
            let f = to_f64(&conic_value(r, s));
            rows.push(RegionRow {
                r: r.clone(),
                s: s.clone(),
                in_region: inside,
                conic_value: f,
                admissible: inside && f.abs() < band,
            });
        }
    }
    Ok(rows)
}
