//! Split root systems of small rank: positive roots, heights, coroots,
//! the Weyl group and the weight combinatorics built on them.
//!
//! Conventions: `cartan[i][j] = alpha_j(h_i)`, the pairing of the `j`-th
//! simple root with the `i`-th simple coroot. Roots are integer coefficient
//! vectors over the simple roots. A weight is recorded by its pairings with
//! the simple coroots.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{q, valuation, Q, Val};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CartanType {
    A1,
    A2,
    A3,
    B2,
    G2,
}

impl CartanType {
    pub const ALL: [CartanType; 5] = [Self::A1, Self::A2, Self::A3, Self::B2, Self::G2];

    pub fn rank(self) -> usize {
        match self {
            Self::A1 => 1,
            Self::A2 | Self::B2 | Self::G2 => 2,
            Self::A3 => 3,
        }
    }

    fn cartan_matrix(self) -> Vec<Vec<i64>> {
        match self {
            Self::A1 => vec![vec![2]],
            Self::A2 => vec![vec![2, -1], vec![-1, 2]],
            Self::A3 => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            // alpha_1 long, alpha_2 short
            Self::B2 => vec![vec![2, -1], vec![-2, 2]],
            // alpha_1 short, alpha_2 long
            Self::G2 => vec![vec![2, -3], vec![-1, 2]],
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A1" | "SL2" => Ok(Self::A1),
            "A2" => Ok(Self::A2),
            "A3" => Ok(Self::A3),
            "B2" | "C2" => Ok(Self::B2),
            "G2" => Ok(Self::G2),
            other => Err(Error::Config(format!("unsupported root system type {other:?}"))),
        }
    }
}

/// Integer coefficients over the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Root {
    pub coeffs: Vec<i64>,
}

impl Root {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Self { coeffs }
    }

    pub fn simple(rank: usize, i: usize) -> Self {
        let mut coeffs = vec![0; rank];
        coeffs[i] = 1;
        Self { coeffs }
    }

    /// Sum of the coefficients over the simple roots.
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|c| *c >= 0) && self.coeffs.iter().any(|c| *c > 0)
    }

    pub fn neg(&self) -> Root {
        Root::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if *c != 1 {
                write!(f, "{c}")?;
            }
            write!(f, "a{}", i + 1)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A character of the Cartan recorded by its simple-coroot pairings, with
/// the deformation level `n` at which it is defined.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Weight {
    #[serde(serialize_with = "ser_qs")]
    pub coroot_pairings: Vec<Q>,
    pub deformation_level: u32,
}

fn ser_qs<S: serde::Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&crate::scalar::render_q(x))?;
    }
    seq.end()
}

impl Weight {
    pub fn new(coroot_pairings: Vec<Q>) -> Self {
        Self { coroot_pairings, deformation_level: 0 }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self::new(v.iter().map(|x| q(*x)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(vec![Q::zero(); rank])
    }

    pub fn with_level(mut self, n: u32) -> Self {
        self.deformation_level = n;
        self
    }

    pub fn rank(&self) -> usize {
        self.coroot_pairings.len()
    }

    /// The weight is `R`-valued on `p^n h` iff every pairing has valuation
    /// at least `-n`.
    pub fn check_level(&self, prime: u64) -> Result<()> {
        let n = self.deformation_level as i64;
        for (i, x) in self.coroot_pairings.iter().enumerate() {
            if valuation(x, prime) < Val::Finite(-n) {
                return Err(Error::Domain(format!(
                    "pairing {} = {} has valuation below -{n}",
                    i + 1,
                    crate::scalar::render_q(x)
                )));
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            coroot_pairings: self.coroot_pairings.iter().zip(&other.coroot_pairings).map(|(a, b)| a + b).collect(),
            deformation_level: self.deformation_level.max(other.deformation_level),
        }
    }

    pub fn neg(&self) -> Weight {
        Weight {
            coroot_pairings: self.coroot_pairings.iter().map(|a| -a).collect(),
            deformation_level: self.deformation_level,
        }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        self.add(&other.neg())
    }

    pub fn is_integral(&self) -> bool {
        self.coroot_pairings.iter().all(|x| x.is_integer())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coroot_pairings.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Weyl group element acting on weights in simple-coroot-pairing
/// coordinates.
pub type WeylMatrix = Vec<Vec<i64>>;

#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan_type: CartanType,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Root>,
    /// `d_i = (alpha_i, alpha_i) / 2`, positive integers with `d_i a_ij`
    /// symmetric and the shortest roots having `d = 1`.
    symmetrizer: Vec<i64>,
    /// Coefficients of each positive coroot over the simple coroots.
    coroots: Vec<Vec<i64>>,
    /// `rho^vee` over the simple coroots.
    delta: Vec<Q>,
}

fn expected_positive_count(t: CartanType) -> usize {
    match t {
        CartanType::A1 => 1,
        CartanType::A2 => 3,
        CartanType::A3 => 6,
        CartanType::B2 => 4,
        CartanType::G2 => 6,
    }
}

fn expected_weyl_order(t: CartanType) -> usize {
    match t {
        CartanType::A1 => 2,
        CartanType::A2 => 6,
        CartanType::A3 => 24,
        CartanType::B2 => 8,
        CartanType::G2 => 12,
    }
}

/// Builds the root system of the given type, checking that `rank` matches.
pub fn build_root_system(cartan_type: CartanType, rank: usize) -> Result<RootSystem> {
    if cartan_type.rank() != rank {
        return Err(Error::Config(format!(
            "type {cartan_type} has rank {}, not {rank}",
            cartan_type.rank()
        )));
    }
    RootSystem::new(cartan_type)
}

impl RootSystem {
    pub fn new(cartan_type: CartanType) -> Result<Self> {
        let cartan = cartan_type.cartan_matrix();
        let rank = cartan.len();
        let symmetrizer = symmetrizer(&cartan)?;
        let positive_roots = enumerate_positive_roots(&cartan);
        if positive_roots.len() != expected_positive_count(cartan_type) {
            return Err(Error::Consistency(format!(
                "{cartan_type}: found {} positive roots",
                positive_roots.len()
            )));
        }
        let mut rs = RootSystem {
            cartan_type,
            rank,
            cartan,
            positive_roots,
            symmetrizer,
            coroots: Vec::new(),
            delta: Vec::new(),
        };
        rs.coroots = rs.positive_roots.iter().map(|a| rs.coroot_of(a)).collect();
        rs.delta = rs.solve_delta()?;
        Ok(rs)
    }

    pub fn from_label(label: &str) -> Result<Self> {
        Self::new(label.parse()?)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn simple_roots(&self) -> &[Root] {
        &self.positive_roots[..self.rank]
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    pub fn height(&self, root: &Root) -> i64 {
        root.height()
    }

    pub fn max_root_height(&self) -> i64 {
        self.positive_roots.iter().map(Root::height).max().unwrap_or(0)
    }

    pub fn highest_root(&self) -> &Root {
        self.positive_roots.last().unwrap()
    }

    /// Index of a positive root by its coefficients.
    pub fn root_index(&self, coeffs: &[i64]) -> Option<usize> {
        self.positive_roots.iter().position(|r| r.coeffs == coeffs)
    }

    /// Whether `coeffs` is a root (positive or negative).
    pub fn is_root(&self, coeffs: &[i64]) -> bool {
        if self.root_index(coeffs).is_some() {
            return true;
        }
        let neg: Vec<i64> = coeffs.iter().map(|c| -c).collect();
        self.root_index(&neg).is_some()
    }

    /// `beta(h_i)` for a root-lattice vector `beta`.
    pub fn pairing(&self, beta: &[i64], i: usize) -> i64 {
        beta.iter().enumerate().map(|(j, c)| c * self.cartan[i][j]).sum()
    }

    /// Symmetric invariant form on the root lattice with `(alpha_i, alpha_i) = 2 d_i`.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += a[i] * b[j] * self.symmetrizer[i] * self.cartan[i][j];
            }
        }
        s
    }

    fn coroot_of(&self, root: &Root) -> Vec<i64> {
        // alpha^vee = sum_j c_j (alpha_j, alpha_j) / (alpha, alpha) alpha_j^vee
        let norm = self.inner(&root.coeffs, &root.coeffs);
        root.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let num = c * 2 * self.symmetrizer[j];
                debug_assert_eq!(num % norm, 0);
                num / norm
            })
            .collect()
    }

    /// Coefficients of the coroot `h_alpha` of the `k`-th positive root over
    /// the simple coroots.
    pub fn coroot(&self, k: usize) -> &[i64] {
        &self.coroots[k]
    }

    /// `delta = rho^vee` over the simple coroots.
    pub fn delta(&self) -> &[Q] {
        &self.delta
    }

    fn solve_delta(&self) -> Result<Vec<Q>> {
        // sum_i delta_i a_ij = 1 for every j: solve A^T delta = 1 exactly
        let r = self.rank;
        let mut m: Vec<Vec<Q>> = (0..r)
            .map(|j| {
                let mut row: Vec<Q> = (0..r).map(|i| q(self.cartan[i][j])).collect();
                row.push(Q::one());
                row
            })
            .collect();
        for col in 0..r {
            let piv = (col..r)
                .find(|row| !m[*row][col].is_zero())
                .ok_or_else(|| Error::Consistency("singular Cartan matrix".into()))?;
            m.swap(col, piv);
            let inv = Q::one() / &m[col][col];
            for x in m[col].iter_mut() {
                *x *= &inv;
            }
            for row in 0..r {
                if row != col && !m[row][col].is_zero() {
                    let f = m[row][col].clone();
                    for k in 0..=r {
                        let sub = &f * &m[col][k];
                        m[row][k] -= sub;
                    }
                }
            }
        }
        Ok(m.into_iter().map(|row| row[r].clone()).collect())
    }

    /// `beta(delta)` for a root-lattice vector.
    pub fn delta_pairing_root(&self, beta: &[i64]) -> Q {
        (0..self.rank).map(|i| &self.delta[i] * q(self.pairing(beta, i))).sum()
    }

    /// `Lambda = lambda(delta)`.
    pub fn weight_delta(&self, w: &Weight) -> Q {
        w.coroot_pairings.iter().zip(&self.delta).map(|(a, b)| a * b).sum()
    }

    /// `lambda(h_alpha)` for the `k`-th positive root.
    pub fn weight_on_coroot(&self, w: &Weight, k: usize) -> Q {
        self.coroots[k].iter().zip(&w.coroot_pairings).map(|(c, x)| q(*c) * x).sum()
    }

    pub fn rho(&self) -> Weight {
        Weight::from_ints(&vec![1; self.rank])
    }

    /// `(rho, delta)`.
    pub fn rho_and_delta(&self) -> (Weight, Vec<Q>) {
        (self.rho(), self.delta.clone())
    }

    /// The weight `beta` viewed as a character of the Cartan.
    pub fn root_weight(&self, beta: &[i64]) -> Weight {
        Weight::from_ints(&(0..self.rank).map(|i| self.pairing(beta, i)).collect::<Vec<_>>())
    }

    /// `lambda - beta` for a root-lattice vector `beta`.
    pub fn shift_down(&self, w: &Weight, beta: &[i64]) -> Weight {
        Weight {
            coroot_pairings: (0..self.rank)
                .map(|i| &w.coroot_pairings[i] - q(self.pairing(beta, i)))
                .collect(),
            deformation_level: w.deformation_level,
        }
    }

    /// `(lambda + rho)(h_alpha) >= 0` for every positive coroot.
    pub fn is_dominant(&self, w: &Weight) -> bool {
        let shifted = w.add(&self.rho());
        (0..self.num_positive()).all(|k| !self.weight_on_coroot(&shifted, k).is_negative())
    }

    /// `(lambda + rho)(h_alpha) != 0` for every positive coroot.
    pub fn is_regular(&self, w: &Weight) -> bool {
        let shifted = w.add(&self.rho());
        (0..self.num_positive()).all(|k| !self.weight_on_coroot(&shifted, k).is_zero())
    }

    fn reflection_matrix(&self, i: usize) -> WeylMatrix {
        // (s_i lambda)(h_j) = lambda_j - lambda_i a_ji
        let r = self.rank;
        let mut m = vec![vec![0; r]; r];
        for j in 0..r {
            m[j][j] += 1;
            m[j][i] -= self.cartan[j][i];
        }
        m
    }

    /// All Weyl group elements as matrices on pairing coordinates,
    /// generated from the simple reflections by breadth-first search.
    pub fn weyl_group(&self) -> Vec<WeylMatrix> {
        let r = self.rank;
        let gens: Vec<WeylMatrix> = (0..r).map(|i| self.reflection_matrix(i)).collect();
        let id: WeylMatrix = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            if !seen.insert(w.clone()) {
                continue;
            }
            for g in &gens {
                let next = mat_mul(g, &w);
                if !seen.contains(&next) {
                    queue.push_back(next);
                }
            }
            out.push(w);
        }
        debug_assert_eq!(out.len(), expected_weyl_order(self.cartan_type));
        out
    }

    pub fn weyl_act(&self, w: &WeylMatrix, lambda: &Weight) -> Weight {
        Weight {
            coroot_pairings: w
                .iter()
                .map(|row| row.iter().zip(&lambda.coroot_pairings).map(|(a, x)| q(*a) * x).sum())
                .collect(),
            deformation_level: lambda.deformation_level,
        }
    }

    /// `w . lambda = w(lambda + rho) - rho`.
    pub fn dot_act(&self, w: &WeylMatrix, lambda: &Weight) -> Weight {
        self.weyl_act(w, &lambda.add(&self.rho())).sub(&self.rho())
    }

    /// Distinct weights in the dot orbit, sorted by their pairings.
    pub fn dot_orbit(&self, lambda: &Weight) -> Vec<Weight> {
        let mut orbit: Vec<Weight> = Vec::new();
        for w in self.weyl_group() {
            let mu = self.dot_act(&w, lambda);
            if !orbit.contains(&mu) {
                orbit.push(mu);
            }
        }
        orbit.sort_by(|a, b| a.coroot_pairings.cmp(&b.coroot_pairings));
        orbit
    }

    /// The longest element: the unique one sending `rho` to `-rho`.
    pub fn longest_element(&self) -> WeylMatrix {
        let rho = self.rho();
        let neg = rho.neg();
        self.weyl_group()
            .into_iter()
            .find(|w| self.weyl_act(w, &rho) == neg)
            .expect("Weyl group has a longest element")
    }

    /// `lambda^* = -w_0 lambda`.
    pub fn lambda_star(&self, lambda: &Weight) -> Weight {
        self.weyl_act(&self.longest_element(), lambda).neg()
    }
}

fn mat_mul(a: &WeylMatrix, b: &WeylMatrix) -> WeylMatrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn symmetrizer(cartan: &[Vec<i64>]) -> Result<Vec<i64>> {
    let r = cartan.len();
    let mut d: Vec<Option<Q>> = vec![None; r];
    d[0] = Some(Q::one());
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..r {
            for j in 0..r {
                if i == j || cartan[i][j] == 0 {
                    continue;
                }
                if let (Some(di), None) = (d[i].clone(), &d[j]) {
                    // d_i a_ij = d_j a_ji
                    d[j] = Some(di * q(cartan[i][j]) / q(cartan[j][i]));
                    changed = true;
                }
            }
        }
    }
    let d: Vec<Q> = d
        .into_iter()
        .map(|x| x.ok_or_else(|| Error::Consistency("disconnected Dynkin diagram".into())))
        .collect::<Result<_>>()?;
    let min = d.iter().min().unwrap().clone();
    d.iter()
        .map(|x| {
            let v = x / &min;
            crate::scalar::q_to_i64(&v).ok_or_else(|| Error::Consistency("non-integral symmetrizer".into()))
        })
        .collect()
}

/// Positive roots by root strings: `beta + alpha_i` is a root iff
/// `p - beta(h_i) > 0` where `p` is the length of the `alpha_i`-string
/// below `beta`.
fn enumerate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Root> {
    let r = cartan.len();
    let mut roots: BTreeSet<Vec<i64>> = (0..r).map(|i| Root::simple(r, i).coeffs).collect();
    let mut frontier: Vec<Vec<i64>> = roots.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for beta in &frontier {
            for i in 0..r {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if roots.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..r).map(|j| beta[j] * cartan[i][j]).sum();
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if roots.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Root> = roots.into_iter().map(Root::new).collect();
    sort_roots(&mut out);
    out
}

/// Canonical order: ascending height, then descending coefficient vector so
/// that the simple roots come out as `alpha_1, ..., alpha_r`.
pub fn sort_roots(roots: &mut [Root]) {
    roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.coeffs.cmp(&a.coeffs)));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q_frac;

    /// Brute-force closure under simple reflections, independent of the
    /// root-string enumeration.
    fn reflection_closure(cartan: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
        let r = cartan.len();
        let mut all: BTreeSet<Vec<i64>> = (0..r).map(|i| Root::simple(r, i).coeffs).collect();
        loop {
            let mut grew = false;
            for beta in all.clone() {
                for i in 0..r {
                    let pairing: i64 = (0..r).map(|j| beta[j] * cartan[i][j]).sum();
                    let mut img = beta.clone();
                    img[i] -= pairing;
                    grew |= all.insert(img);
                }
            }
            if !grew {
                break;
            }
        }
        all.into_iter().filter(|b| Root::new(b.clone()).is_positive()).collect()
    }

    #[test]
    fn positive_roots_match_reflection_closure() {
        for t in CartanType::ALL {
            let rs = RootSystem::new(t).unwrap();
            let mine: BTreeSet<Vec<i64>> = rs.positive_roots().iter().map(|r| r.coeffs.clone()).collect();
            assert_eq!(mine, reflection_closure(rs.cartan_matrix()), "{t}");
            assert_eq!(rs.num_positive(), expected_positive_count(t));
        }
    }

    #[test]
    fn a1_and_a2_roots() {
        let a1 = RootSystem::new(CartanType::A1).unwrap();
        assert_eq!(a1.positive_roots(), &[Root::new(vec![1])]);
        let a2 = RootSystem::new(CartanType::A2).unwrap();
        let coeffs: Vec<_> = a2.positive_roots().iter().map(|r| r.coeffs.clone()).collect();
        assert_eq!(coeffs, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn g2_highest_root() {
        let g2 = RootSystem::new(CartanType::G2).unwrap();
        assert_eq!(g2.highest_root().coeffs, vec![3, 2]);
        assert_eq!(g2.height(g2.highest_root()), 5);
        assert_eq!(g2.max_root_height(), 5);
        // the highest root pairs with delta to its height
        assert_eq!(g2.delta_pairing_root(&[3, 2]), q(5));
        // explicit coroot expansion: delta = 3 h_1 + 5 h_2 for this Cartan matrix
        assert_eq!(g2.delta(), &[q(3), q(5)]);
    }

    #[test]
    fn roots_sorted_and_heights() {
        for t in CartanType::ALL {
            let rs = RootSystem::new(t).unwrap();
            let roots = rs.positive_roots();
            for w in roots.windows(2) {
                assert!(w[0].height() <= w[1].height());
            }
            for (k, r) in roots.iter().enumerate() {
                assert!(r.height() >= 1);
                assert_eq!(r.height() == 1, k < rs.rank(), "{t} {r}");
                assert_eq!(rs.delta_pairing_root(&r.coeffs), q(r.height()), "{t} {r}");
            }
            for i in 0..rs.rank() {
                assert_eq!(rs.simple_roots()[i], Root::simple(rs.rank(), i));
            }
        }
    }

    #[test]
    fn weyl_group_orders() {
        for t in CartanType::ALL {
            let rs = RootSystem::new(t).unwrap();
            assert_eq!(rs.weyl_group().len(), expected_weyl_order(t), "{t}");
        }
    }

    #[test]
    fn rank_mismatch_is_config_error() {
        assert!(matches!(build_root_system(CartanType::A2, 3), Err(Error::Config(_))));
        assert!("E8".parse::<CartanType>().is_err());
        assert!(build_root_system(CartanType::B2, 2).is_ok());
    }

    #[test]
    fn dominance_and_regularity_sl2() {
        let rs = RootSystem::new(CartanType::A1).unwrap();
        let w = |m: i64| Weight::from_ints(&[m]);
        assert!(rs.is_dominant(&w(3)) && rs.is_regular(&w(3)));
        assert!(rs.is_dominant(&w(-1)) && !rs.is_regular(&w(-1)));
        assert!(!rs.is_dominant(&w(-3)));
        assert_eq!(rs.rho().coroot_pairings, vec![q(1)]);
    }

    #[test]
    fn lambda_star_examples() {
        let a1 = RootSystem::new(CartanType::A1).unwrap();
        for m in -3..5 {
            assert_eq!(a1.lambda_star(&Weight::from_ints(&[m])), Weight::from_ints(&[m]));
        }
        let a2 = RootSystem::new(CartanType::A2).unwrap();
        assert_eq!(a2.lambda_star(&Weight::from_ints(&[1, 0])), Weight::from_ints(&[0, 1]));
        assert_eq!(a2.lambda_star(&Weight::zero(2)), Weight::zero(2));
        let b2 = RootSystem::new(CartanType::B2).unwrap();
        let w = Weight::new(vec![q_frac(1, 2), q(-4)]);
        assert_eq!(b2.lambda_star(&w), w);
    }

    #[test]
    fn dominance_agrees_with_lambda_star() {
        for t in CartanType::ALL {
            let rs = RootSystem::new(t).unwrap();
            let r = rs.rank();
            for seed in 0..40i64 {
                let w = Weight::new((0..r).map(|i| q_frac((seed * 7 + i as i64 * 3) % 9 - 4, 1 + (seed % 2))).collect());
                assert_eq!(rs.is_dominant(&w), rs.is_dominant(&rs.lambda_star(&w)), "{t} {w}");
            }
        }
    }

    #[test]
    fn sl2_dot_orbit() {
        let rs = RootSystem::new(CartanType::A1).unwrap();
        let orbit = rs.dot_orbit(&Weight::from_ints(&[2]));
        assert_eq!(orbit, vec![Weight::from_ints(&[-4]), Weight::from_ints(&[2])]);
    }
}
