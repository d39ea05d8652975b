//! Chevalley basis structure constants.
//!
//! The basis of `g` is indexed in PBW order: `f_1..f_N` (positive root
//! order), then `h_1..h_r` (simple coroots), then `e_1..e_N`. For positive
//! roots `a, b` with `a + b` a root, `[e_a, e_b] = +-(p + 1) e_{a+b}` where
//! `p` is the length of the `a`-string below `b`. Signs on extraspecial
//! pairs are `+`; the remaining signs on positive pairs are found by search
//! and the whole table is then accepted only if Jacobi and Serre hold
//! exhaustively.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::root_system::RootSystem;

/// Integer combination of Lie algebra basis elements, sorted by index.
pub type LieVec = Vec<(usize, i64)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisIndex {
    /// `f_alpha` for the positive root with this index.
    F(usize),
    /// Simple coroot `h_i`.
    H(usize),
    /// `e_alpha` for the positive root with this index.
    E(usize),
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisIndex::F(k) => write!(f, "f{}", k + 1),
            BasisIndex::H(i) => write!(f, "h{}", i + 1),
            BasisIndex::E(k) => write!(f, "e{}", k + 1),
        }
    }
}

/// Maps between [`BasisIndex`] and flat PBW positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisLayout {
    pub num_positive: usize,
    pub rank: usize,
}

impl BasisLayout {
    pub fn dim(&self) -> usize {
        2 * self.num_positive + self.rank
    }

    pub fn index(&self, b: BasisIndex) -> usize {
        match b {
            BasisIndex::F(k) => k,
            BasisIndex::H(i) => self.num_positive + i,
            BasisIndex::E(k) => self.num_positive + self.rank + k,
        }
    }

    pub fn basis(&self, idx: usize) -> BasisIndex {
        let n = self.num_positive;
        if idx < n {
            BasisIndex::F(idx)
        } else if idx < n + self.rank {
            BasisIndex::H(idx - n)
        } else {
            BasisIndex::E(idx - n - self.rank)
        }
    }

    pub fn is_f(&self, idx: usize) -> bool {
        idx < self.num_positive
    }

    pub fn is_h(&self, idx: usize) -> bool {
        idx >= self.num_positive && idx < self.num_positive + self.rank
    }

    pub fn is_e(&self, idx: usize) -> bool {
        idx >= self.num_positive + self.rank
    }
}

#[derive(Clone, Debug)]
pub struct StructureConstants {
    layout: BasisLayout,
    table: Vec<Vec<LieVec>>,
    /// Chevalley involution on the basis (anti-automorphism extended to U).
    sigma: Vec<LieVec>,
    /// Signs chosen on positive pairs `(a, b)`, `a < b`, `a + b` a root.
    signs: BTreeMap<(usize, usize), i64>,
}

fn add_into(acc: &mut BTreeMap<usize, i64>, v: &LieVec, c: i64) {
    for (i, x) in v {
        *acc.entry(*i).or_default() += c * x;
    }
}

fn finish(acc: BTreeMap<usize, i64>) -> LieVec {
    acc.into_iter().filter(|(_, x)| *x != 0).collect()
}

impl StructureConstants {
    pub fn layout(&self) -> BasisLayout {
        self.layout
    }

    pub fn dim(&self) -> usize {
        self.layout.dim()
    }

    /// `[x, y]` for basis indices.
    pub fn bracket(&self, x: usize, y: usize) -> &LieVec {
        &self.table[x][y]
    }

    pub fn signs(&self) -> &BTreeMap<(usize, usize), i64> {
        &self.signs
    }

    pub fn sigma(&self, x: usize) -> &LieVec {
        &self.sigma[x]
    }

    /// Bracket extended bilinearly.
    pub fn bracket_vec(&self, a: &LieVec, b: &LieVec) -> LieVec {
        let mut acc = BTreeMap::new();
        for (i, x) in a {
            for (j, y) in b {
                add_into(&mut acc, &self.table[*i][*j], x * y);
            }
        }
        finish(acc)
    }

    /// Residual of the Jacobi identity on a basis triple.
    pub fn jacobi_residual(&self, x: usize, y: usize, z: usize) -> LieVec {
        let u = |i: usize| vec![(i, 1i64)];
        let mut acc = BTreeMap::new();
        add_into(&mut acc, &self.bracket_vec(&u(x), &self.table[y][z]), 1);
        add_into(&mut acc, &self.bracket_vec(&u(y), &self.table[z][x]), 1);
        add_into(&mut acc, &self.bracket_vec(&u(z), &self.table[x][y]), 1);
        finish(acc)
    }

    /// First basis triple violating Jacobi, if any.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        for x in 0..d {
            for y in x + 1..d {
                for z in y + 1..d {
                    if !self.jacobi_residual(x, y, z).is_empty() {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_antisymmetric(&self) -> bool {
        let d = self.dim();
        (0..d).all(|x| {
            (0..d).all(|y| {
                let neg: LieVec = self.table[y][x].iter().map(|(i, c)| (*i, -c)).collect();
                self.table[x][y] == neg
            })
        })
    }

    /// `(ad x_i)^{1 - a_ij} x_j` for `x = e` and `x = f`, over all `i != j`.
    /// Returns the first nonzero residual.
    pub fn serre_violation(&self, rs: &RootSystem) -> Option<(BasisIndex, BasisIndex)> {
        let r = rs.rank();
        let lay = self.layout;
        for i in 0..r {
            for j in 0..r {
                if i == j {
                    continue;
                }
                let power = 1 - rs.cartan_matrix()[i][j];
                for (xi, xj) in [
                    (BasisIndex::E(i), BasisIndex::E(j)),
                    (BasisIndex::F(i), BasisIndex::F(j)),
                ] {
                    let gen = vec![(lay.index(xi), 1)];
                    let mut v = vec![(lay.index(xj), 1)];
                    for _ in 0..power {
                        v = self.bracket_vec(&gen, &v);
                    }
                    if !v.is_empty() {
                        return Some((xi, xj));
                    }
                }
            }
        }
        None
    }

    /// Checks `sigma([x, y]) = [sigma y, sigma x]` and `sigma^2 = id` on the basis.
    pub fn sigma_violation(&self) -> Option<(usize, usize)> {
        let d = self.dim();
        for x in 0..d {
            let twice = self.apply_sigma(&self.sigma[x]);
            if twice != vec![(x, 1)] {
                return Some((x, x));
            }
            for y in 0..d {
                let lhs = self.apply_sigma(&self.table[x][y]);
                let rhs = self.bracket_vec(&self.sigma[y], &self.sigma[x]);
                if lhs != rhs {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn apply_sigma(&self, v: &LieVec) -> LieVec {
        let mut acc = BTreeMap::new();
        for (i, c) in v {
            add_into(&mut acc, &self.sigma[*i], *c);
        }
        finish(acc)
    }
}

/// Builds and validates the structure constants for `rs`.
pub fn build_structure_constants(rs: &RootSystem) -> Result<StructureConstants> {
    let roots: Vec<Vec<i64>> = rs.positive_roots().iter().map(|r| r.coeffs.clone()).collect();
    let n = roots.len();
    let layout = BasisLayout { num_positive: n, rank: rs.rank() };

    let add = |a: &[i64], b: &[i64]| -> Vec<i64> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    let sub = |a: &[i64], b: &[i64]| -> Vec<i64> { a.iter().zip(b).map(|(x, y)| x - y).collect() };
    let string_below = |a: &[i64], b: &[i64]| -> i64 {
        let mut p = 0;
        let mut cur = b.to_vec();
        loop {
            cur = sub(&cur, a);
            if cur.iter().all(|c| *c == 0) || !rs.is_root(&cur) {
                return p;
            }
            p += 1;
        }
    };

    // positive pairs a < b with a + b a root; extraspecial = smallest a per sum
    let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if let Some(c) = rs.root_index(&add(&roots[a], &roots[b])) {
                pairs.push((a, b, c));
            }
        }
    }
    let mut extraspecial: HashMap<usize, (usize, usize)> = HashMap::new();
    for &(a, b, c) in &pairs {
        extraspecial.entry(c).or_insert((a, b));
    }
    let free: Vec<(usize, usize)> = pairs
        .iter()
        .filter(|(a, b, c)| extraspecial[c] != (*a, *b))
        .map(|(a, b, _)| (*a, *b))
        .collect();

    for mask in 0u64..(1u64 << free.len()) {
        let mut signs: BTreeMap<(usize, usize), i64> = pairs.iter().map(|(a, b, _)| ((*a, *b), 1)).collect();
        for (bit, key) in free.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                signs.insert(*key, -1);
            }
        }
        let pos_n = |a: usize, b: usize| -> i64 {
            if a < b {
                signs[&(a, b)] * (string_below(&roots[a], &roots[b]) + 1)
            } else {
                -signs[&(b, a)] * (string_below(&roots[b], &roots[a]) + 1)
            }
        };
        let table = match fill_table(rs, layout, &roots, &pos_n) {
            Ok(t) => t,
            Err(_) => continue,
        };
        let mut sc = StructureConstants { layout, table, sigma: Vec::new(), signs };
        if !sc.is_antisymmetric() || sc.jacobi_violation().is_some() {
            continue;
        }
        if let Some((i, j)) = sc.serre_violation(rs) {
            return Err(Error::Consistency(format!("Serre relation fails for ({i}, {j})")));
        }
        sc.sigma = chevalley_involution(&sc, rs, &extraspecial)?;
        if let Some((x, y)) = sc.sigma_violation() {
            return Err(Error::Consistency(format!(
                "Chevalley involution is not an anti-automorphism on ({}, {})",
                layout.basis(x),
                layout.basis(y)
            )));
        }
        return Ok(sc);
    }
    Err(Error::Consistency(format!(
        "no sign assignment satisfies Jacobi for {}",
        rs.cartan_type()
    )))
}

fn fill_table(
    rs: &RootSystem,
    layout: BasisLayout,
    roots: &[Vec<i64>],
    pos_n: &dyn Fn(usize, usize) -> i64,
) -> Result<Vec<Vec<LieVec>>> {
    let n = roots.len();
    let r = rs.rank();
    let d = layout.dim();
    let add = |a: &[i64], b: &[i64]| -> Vec<i64> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    let sub = |a: &[i64], b: &[i64]| -> Vec<i64> { a.iter().zip(b).map(|(x, y)| x - y).collect() };
    let norm = |a: &[i64]| rs.inner(a, a);
    let exact = |num: i64, den: i64| -> Result<i64> {
        if num % den != 0 {
            return Err(Error::Consistency("non-integral structure constant".into()));
        }
        Ok(num / den)
    };

    let mut table = vec![vec![LieVec::new(); d]; d];
    for a in 0..n {
        for b in 0..n {
            let (ea, eb) = (layout.index(BasisIndex::E(a)), layout.index(BasisIndex::E(b)));
            let (fa, fb) = (layout.index(BasisIndex::F(a)), layout.index(BasisIndex::F(b)));
            if a != b {
                if let Some(c) = rs.root_index(&add(&roots[a], &roots[b])) {
                    let nab = pos_n(a, b);
                    table[ea][eb] = vec![(layout.index(BasisIndex::E(c)), nab)];
                    table[fa][fb] = vec![(layout.index(BasisIndex::F(c)), -nab)];
                }
            }
            // [e_a, f_b]
            let entry: LieVec = if a == b {
                rs.coroot(a)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0)
                    .map(|(j, c)| (layout.index(BasisIndex::H(j)), *c))
                    .collect()
            } else {
                let gamma = sub(&roots[a], &roots[b]);
                if let Some(c) = rs.root_index(&gamma) {
                    // a = b + c:  N_{a,-b} = -(c,c)/(a,a) N_{b,c}
                    let val = exact(-norm(&roots[c]) * pos_n(b, c), norm(&roots[a]))?;
                    vec![(layout.index(BasisIndex::E(c)), val)]
                } else if let Some(c) = rs.root_index(&gamma.iter().map(|x| -x).collect::<Vec<_>>()) {
                    // b = a + c:  N_{a,-b} = (c,c)/(b,b) N_{c,a}
                    let val = exact(norm(&roots[c]) * pos_n(c, a), norm(&roots[b]))?;
                    vec![(layout.index(BasisIndex::F(c)), val)]
                } else {
                    Vec::new()
                }
            };
            let neg: LieVec = entry.iter().map(|(i, c)| (*i, -c)).collect();
            table[ea][fb] = entry;
            table[fb][ea] = neg;
        }
        for i in 0..r {
            let h = layout.index(BasisIndex::H(i));
            let pairing = rs.pairing(&roots[a], i);
            if pairing != 0 {
                let (ea, fa) = (layout.index(BasisIndex::E(a)), layout.index(BasisIndex::F(a)));
                table[h][ea] = vec![(ea, pairing)];
                table[ea][h] = vec![(ea, -pairing)];
                table[h][fa] = vec![(fa, -pairing)];
                table[fa][h] = vec![(fa, pairing)];
            }
        }
    }
    Ok(table)
}

/// The anti-automorphism fixing `h` and swapping `e_i <-> f_i` on simple
/// roots, propagated to the other root vectors through extraspecial
/// brackets.
fn chevalley_involution(
    sc: &StructureConstants,
    rs: &RootSystem,
    extraspecial: &HashMap<usize, (usize, usize)>,
) -> Result<Vec<LieVec>> {
    let lay = sc.layout;
    let n = lay.num_positive;
    let mut sigma: Vec<LieVec> = vec![LieVec::new(); lay.dim()];
    for i in 0..rs.rank() {
        let h = lay.index(BasisIndex::H(i));
        sigma[h] = vec![(h, 1)];
        sigma[lay.index(BasisIndex::E(i))] = vec![(lay.index(BasisIndex::F(i)), 1)];
        sigma[lay.index(BasisIndex::F(i))] = vec![(lay.index(BasisIndex::E(i)), 1)];
    }
    for c in rs.rank()..n {
        let (a, b) = extraspecial[&c];
        for (kind_a, kind_b, kind_c) in [
            (BasisIndex::E(a), BasisIndex::E(b), BasisIndex::E(c)),
            (BasisIndex::F(a), BasisIndex::F(b), BasisIndex::F(c)),
        ] {
            // x_c = [x_a, x_b] / N  =>  sigma(x_c) = [sigma x_b, sigma x_a] / N
            let br = sc.bracket(lay.index(kind_a), lay.index(kind_b));
            let nval = br
                .iter()
                .find(|(i, _)| *i == lay.index(kind_c))
                .map(|(_, v)| *v)
                .filter(|v| !v.is_zero())
                .ok_or_else(|| Error::Consistency("extraspecial bracket vanishes".into()))?;
            let img = sc.bracket_vec(&sigma[lay.index(kind_b)], &sigma[lay.index(kind_a)]);
            let mut out = LieVec::new();
            for (i, v) in img {
                if v % nval != 0 {
                    return Err(Error::Consistency("non-integral Chevalley involution".into()));
                }
                out.push((i, v / nval));
            }
            sigma[lay.index(kind_c)] = out;
        }
    }
    Ok(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::{CartanType, RootSystem};

    #[test]
    fn sl2_defining_relations() {
        let rs = RootSystem::new(CartanType::A1).unwrap();
        let sc = build_structure_constants(&rs).unwrap();
        let lay = sc.layout();
        let (f, h, e) = (
            lay.index(BasisIndex::F(0)),
            lay.index(BasisIndex::H(0)),
            lay.index(BasisIndex::E(0)),
        );
        assert_eq!(sc.bracket(e, f), &vec![(h, 1)]);
        assert_eq!(sc.bracket(h, e), &vec![(e, 2)]);
        assert_eq!(sc.bracket(h, f), &vec![(f, -2)]);
        assert_eq!(sc.sigma(e), &vec![(f, 1)]);
        assert_eq!(sc.sigma(h), &vec![(h, 1)]);
    }

    #[test]
    fn all_types_validate() {
        for t in CartanType::ALL {
            let rs = RootSystem::new(t).unwrap();
            let sc = build_structure_constants(&rs).unwrap();
            assert!(sc.is_antisymmetric(), "{t}");
            assert_eq!(sc.jacobi_violation(), None, "{t}");
            assert_eq!(sc.serre_violation(&rs), None, "{t}");
            assert_eq!(sc.sigma_violation(), None, "{t}");
        }
    }

    #[test]
    fn magnitudes_are_string_lengths_plus_one() {
        // G2: [e_a1, e_{2a1+a2}] = +-3 e_{3a1+a2}
        let rs = RootSystem::new(CartanType::G2).unwrap();
        let sc = build_structure_constants(&rs).unwrap();
        let lay = sc.layout();
        let a1 = rs.root_index(&[1, 0]).unwrap();
        let b = rs.root_index(&[2, 1]).unwrap();
        let c = rs.root_index(&[3, 1]).unwrap();
        let br = sc.bracket(lay.index(BasisIndex::E(a1)), lay.index(BasisIndex::E(b)));
        assert_eq!(br.len(), 1);
        assert_eq!(br[0].0, lay.index(BasisIndex::E(c)));
        assert_eq!(br[0].1.abs(), 3);
    }

    type Mat = Vec<Vec<i64>>;

    fn mat_zero(n: usize) -> Mat {
        vec![vec![0; n]; n]
    }

    fn commutator(a: &Mat, b: &Mat) -> Mat {
        let n = a.len();
        let mut out = mat_zero(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    out[i][j] += a[i][k] * b[k][j] - b[i][k] * a[k][j];
                }
            }
        }
        out
    }

    fn combine(terms: &[(usize, i64)], mats: &[Mat]) -> Mat {
        let n = mats[0].len();
        let mut out = mat_zero(n);
        for (idx, c) in terms {
            for i in 0..n {
                for j in 0..n {
                    out[i][j] += c * mats[*idx][i][j];
                }
            }
        }
        out
    }

    /// Realise sl_{r+1} by elementary matrices and compare every bracket.
    fn matrix_realisation_agrees(t: CartanType) {
        let rs = RootSystem::new(t).unwrap();
        let sc = build_structure_constants(&rs).unwrap();
        let lay = sc.layout();
        let r = rs.rank();
        let n = r + 1;
        let unit = |i: usize, j: usize| {
            let mut m = mat_zero(n);
            m[i][j] = 1;
            m
        };
        let mut mats: Vec<Mat> = vec![mat_zero(n); lay.dim()];
        for i in 0..r {
            mats[lay.index(BasisIndex::E(i))] = unit(i, i + 1);
            mats[lay.index(BasisIndex::F(i))] = unit(i + 1, i);
            let mut h = mat_zero(n);
            h[i][i] = 1;
            h[i + 1][i + 1] = -1;
            mats[lay.index(BasisIndex::H(i))] = h;
        }
        let roots = rs.positive_roots();
        for c in r..roots.len() {
            // first decomposition c = a + b with a < b
            let (a, b) = (0..c)
                .flat_map(|a| (a + 1..c).map(move |b| (a, b)))
                .find(|(a, b)| {
                    roots[*a].coeffs.iter().zip(&roots[*b].coeffs).map(|(x, y)| x + y).collect::<Vec<_>>()
                        == roots[c].coeffs
                })
                .unwrap();
            for (ka, kb, kc) in [
                (BasisIndex::E(a), BasisIndex::E(b), BasisIndex::E(c)),
                (BasisIndex::F(a), BasisIndex::F(b), BasisIndex::F(c)),
            ] {
                let nval = sc.bracket(lay.index(ka), lay.index(kb))[0].1;
                let m = commutator(&mats[lay.index(ka)], &mats[lay.index(kb)]);
                mats[lay.index(kc)] = m.into_iter().map(|row| row.into_iter().map(|x| x / nval).collect()).collect();
            }
        }
        for x in 0..lay.dim() {
            for y in 0..lay.dim() {
                assert_eq!(
                    commutator(&mats[x], &mats[y]),
                    combine(sc.bracket(x, y), &mats),
                    "{t}: [{}, {}]",
                    lay.basis(x),
                    lay.basis(y)
                );
            }
        }
        if t == CartanType::A2 {
            // [e_a1, e_a2] = + e_{a1+a2} and e_{a1+a2} is the (1,3) matrix unit
            assert_eq!(sc.bracket(lay.index(BasisIndex::E(0)), lay.index(BasisIndex::E(1))), &vec![(lay.index(BasisIndex::E(2)), 1)]);
            assert_eq!(mats[lay.index(BasisIndex::E(2))], unit(0, 2));
        }
    }

    #[test]
    fn type_a_matches_matrix_realisation() {
        for t in [CartanType::A1, CartanType::A2, CartanType::A3] {
            matrix_realisation_agrees(t);
        }
    }
}
