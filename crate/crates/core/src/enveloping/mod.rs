//! The enveloping algebra `U(g)` in PBW normal form.
//!
//! [`Enveloping`] owns the root system, the validated structure constants
//! and a memo table for left multiplication of a basis monomial by a
//! generator, which is the only place straightening happens. Everything
//! else (products, the involutions, the adjoint group action, the central
//! character) is built on top of it.

mod element;
pub mod lie;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};

pub use element::{Monomial, UEAElement};
pub use lie::{build_structure_constants, BasisIndex, BasisLayout, LieVec, StructureConstants};

use crate::error::{Error, Result};
use crate::root_system::{CartanType, RootSystem, Weight};
use crate::scalar::{q, valuation, Q, Val};

/// Rewriting order used by [`Enveloping::pbw_normalize`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwapSchedule {
    LeftmostFirst,
    RightmostFirst,
}

pub struct Enveloping {
    rs: RootSystem,
    sc: StructureConstants,
    prime: u64,
    cache: RwLock<HashMap<(usize, Monomial), UEAElement>>,
}

impl std::fmt::Debug for Enveloping {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Enveloping")
            .field("type", &self.rs.cartan_type())
            .field("prime", &self.prime)
            .finish()
    }
}

impl Enveloping {
    pub fn new(rs: RootSystem, prime: u64) -> Result<Self> {
        if !crate::scalar::is_prime(prime) {
            return Err(Error::Config(format!("{prime} is not prime")));
        }
        let sc = build_structure_constants(&rs)?;
        Ok(Self {
            rs,
            sc,
            prime,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn of_type(t: CartanType, prime: u64) -> Result<Arc<Self>> {
        Ok(Arc::new(Self::new(RootSystem::new(t)?, prime)?))
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.sc
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn layout(&self) -> BasisLayout {
        self.sc.layout()
    }

    pub fn dim(&self) -> usize {
        self.sc.dim()
    }

    pub fn one(&self) -> UEAElement {
        UEAElement::one(self.dim())
    }

    pub fn constant(&self, c: Q) -> UEAElement {
        UEAElement::constant(self.dim(), c)
    }

    pub fn gen(&self, b: BasisIndex) -> UEAElement {
        self.gen_idx(self.layout().index(b))
    }

    pub fn gen_idx(&self, idx: usize) -> UEAElement {
        UEAElement::monomial(Monomial::generator(self.dim(), idx), Q::one())
    }

    pub fn lie_element(&self, v: &LieVec) -> UEAElement {
        UEAElement::from_terms(v.iter().map(|(i, c)| (Monomial::generator(self.dim(), *i), q(*c))))
    }

    /// `sum_i coeffs[i] h_i`.
    pub fn cartan_element(&self, coeffs: &[Q]) -> UEAElement {
        let lay = self.layout();
        UEAElement::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::generator(self.dim(), lay.index(BasisIndex::H(i))), c.clone())),
        )
    }

    /// `delta` as an element of `U(h)`.
    pub fn delta_element(&self) -> UEAElement {
        self.cartan_element(self.rs.delta())
    }

    /// Product of generators in the given order.
    pub fn word(&self, gens: &[BasisIndex]) -> UEAElement {
        let lay = self.layout();
        gens.iter()
            .rev()
            .fold(self.one(), |acc, g| self.gen_mul(lay.index(*g), &acc))
    }

    /// `x * m` in PBW form, for a generator index `x` and basis monomial `m`.
    pub fn left_mul_gen(&self, x: usize, m: &Monomial) -> UEAElement {
        let j = match m.first_factor() {
            Some(j) if j < x => j,
            _ => {
                let mut out = m.clone();
                out.0[x] += 1;
                return UEAElement::monomial(out, Q::one());
            }
        };
        let key = (x, m.clone());
        if let Some(hit) = self.cache.read().unwrap().get(&key) {
            return hit.clone();
        }
        // x g_j rest = g_j (x rest) + [x, g_j] rest
        let mut rest = m.clone();
        rest.0[j] -= 1;
        let inner = self.left_mul_gen(x, &rest);
        let mut out = self.gen_mul(j, &inner);
        for (z, c) in self.sc.bracket(x, j) {
            out.add_scaled(&self.left_mul_gen(*z, &rest), &q(*c));
        }
        self.cache.write().unwrap().insert(key, out.clone());
        out
    }

    /// `x * a` for a generator index `x`.
    pub fn gen_mul(&self, x: usize, a: &UEAElement) -> UEAElement {
        let mut out = UEAElement::zero();
        for (m, c) in a.terms() {
            out.add_scaled(&self.left_mul_gen(x, m), c);
        }
        out
    }

    /// `m * a` for a basis monomial `m`.
    pub fn monomial_mul(&self, m: &Monomial, a: &UEAElement) -> UEAElement {
        m.factors().iter().rev().fold(a.clone(), |acc, g| self.gen_mul(*g, &acc))
    }

    pub fn mul(&self, a: &UEAElement, b: &UEAElement) -> UEAElement {
        let mut out = UEAElement::zero();
        for (m, c) in a.terms() {
            out.add_scaled(&self.monomial_mul(m, b), c);
        }
        out
    }

    pub fn pow(&self, a: &UEAElement, k: u32) -> UEAElement {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    pub fn commutator(&self, a: &UEAElement, b: &UEAElement) -> UEAElement {
        &self.mul(a, b) - &self.mul(b, a)
    }

    /// Canonical form of `coeff * word` by explicit adjacent-swap rewriting
    /// `x y -> y x + [x, y]`. Independent of the memoised multiplication.
    pub fn pbw_normalize(&self, word: &[BasisIndex], coeff: Q, schedule: SwapSchedule) -> UEAElement {
        let lay = self.layout();
        let mut pending: BTreeMap<Vec<usize>, Q> = BTreeMap::new();
        pending.insert(word.iter().map(|b| lay.index(*b)).collect(), coeff);
        let mut out = UEAElement::zero();
        while let Some((w, c)) = pending.pop_first() {
            if c.is_zero() {
                continue;
            }
            let inversions = (0..w.len().saturating_sub(1)).filter(|i| w[*i] > w[*i + 1]);
            let pos = match schedule {
                SwapSchedule::LeftmostFirst => inversions.min(),
                SwapSchedule::RightmostFirst => inversions.max(),
            };
            let Some(i) = pos else {
                let mut m = Monomial::one(self.dim());
                for g in &w {
                    m.0[*g] += 1;
                }
                out.add_term(m, c);
                continue;
            };
            let mut swapped = w.clone();
            swapped.swap(i, i + 1);
            *pending.entry(swapped).or_insert_with(Q::zero) += &c;
            for (z, k) in self.sc.bracket(w[i], w[i + 1]) {
                let mut shorter = w[..i].to_vec();
                shorter.push(*z);
                shorter.extend_from_slice(&w[i + 2..]);
                *pending.entry(shorter).or_insert_with(Q::zero) += &c * q(*k);
            }
        }
        out
    }

    /// Principal anti-automorphism: `(x_1 ... x_n)^tau = (-1)^n x_n ... x_1`.
    pub fn tau(&self, a: &UEAElement) -> UEAElement {
        let mut out = UEAElement::zero();
        for (m, c) in a.terms() {
            let reversed = m.factors().iter().fold(self.one(), |acc, g| self.gen_mul(*g, &acc));
            let sign = if m.degree() % 2 == 0 { Q::one() } else { q(-1) };
            out.add_scaled(&reversed, &(c * sign));
        }
        out
    }

    /// Chevalley anti-involution: swaps `e_i` and `f_i`, fixes `h`.
    pub fn sigma(&self, a: &UEAElement) -> UEAElement {
        let mut out = UEAElement::zero();
        for (m, c) in a.terms() {
            let mut acc = self.one();
            for g in m.factors() {
                let mut next = UEAElement::zero();
                for (z, k) in self.sc.sigma(g) {
                    next.add_scaled(&self.gen_mul(*z, &acc), &q(*k));
                }
                acc = next;
            }
            out.add_scaled(&acc, c);
        }
        out
    }

    /// `ad(e_alpha)(a) = e_alpha a - a e_alpha`.
    pub fn ad_e(&self, k: usize, a: &UEAElement) -> UEAElement {
        self.commutator(&self.gen(BasisIndex::E(k)), a)
    }

    /// `x_alpha(r) . a = sum_m ad(r e_alpha)^m / m! (a)`; the sum is finite
    /// because `ad e_alpha` is nilpotent on each filtered piece.
    pub fn adjoint_group_action(&self, k: usize, r: &Q, a: &UEAElement) -> Result<UEAElement> {
        self.adjoint_group_action_of(BasisIndex::E(k), r, a)
    }

    /// Same as [`Self::adjoint_group_action`] for any root vector.
    pub fn adjoint_group_action_of(&self, root_vector: BasisIndex, r: &Q, a: &UEAElement) -> Result<UEAElement> {
        let x = self.gen(root_vector);
        let height = match root_vector {
            BasisIndex::E(k) | BasisIndex::F(k) => self.rs.positive_roots()[k].height(),
            BasisIndex::H(_) => {
                return Err(Error::Domain("adjoint group action needs a root vector".into()));
            }
        };
        // ad(x) raises the height of the ad-weight by `height`; the weights of
        // a degree-d element have height at most d * max_root_height.
        let deg = a.degree().unwrap_or(0) as i64;
        let budget = (2 * deg * self.rs.max_root_height()) / height + 1;
        let mut total = a.clone();
        let mut term = a.clone();
        let mut m = 0i64;
        loop {
            m += 1;
            term = self.commutator(&x, &term).scaled(&(r / q(m)));
            if term.is_zero() {
                return Ok(total);
            }
            if m > budget {
                return Err(Error::Consistency(format!(
                    "ad({root_vector}) not nilpotent within {budget} steps"
                )));
            }
            total += &term;
        }
    }

    /// `min over terms of val(c) - n * deg`; `+inf` for zero.
    pub fn gauge(&self, a: &UEAElement, n: u32) -> Val {
        a.terms()
            .iter()
            .map(|(m, c)| valuation(c, self.prime) + -(n as i64 * m.degree() as i64))
            .min()
            .unwrap_or(Val::Infinite)
    }

    /// Membership in the deformation `U(g)_n`.
    pub fn is_in_deformation(&self, a: &UEAElement, n: u32) -> bool {
        self.gauge(a, n) >= Val::Finite(0)
    }

    /// Projection onto `U(h)` along `n^- U + U n^+`, evaluated at `lambda`.
    pub fn cartan_projection_at(&self, a: &UEAElement, lambda: &Weight) -> Q {
        let lay = self.layout();
        let mut total = Q::zero();
        'terms: for (m, c) in a.terms() {
            let mut val = c.clone();
            for (idx, e) in m.exponents().iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                match lay.basis(idx) {
                    BasisIndex::H(i) => {
                        for _ in 0..*e {
                            val *= &lambda.coroot_pairings[i];
                        }
                    }
                    _ => continue 'terms,
                }
            }
            total += val;
        }
        total
    }

    /// First Lie generator (among `e_i, f_i, h_i`) not commuting with `z`.
    pub fn centrality_witness(&self, z: &UEAElement) -> Option<(BasisIndex, UEAElement)> {
        let r = self.rs.rank();
        (0..r)
            .flat_map(|i| [BasisIndex::E(i), BasisIndex::F(i), BasisIndex::H(i)])
            .map(|b| (b, self.commutator(&self.gen(b), z)))
            .find(|(_, c)| !c.is_zero())
    }

    /// The scalar by which a central `z` acts on `M(lambda)`.
    pub fn central_character(&self, z: &UEAElement, lambda: &Weight) -> Result<Q> {
        if let Some((b, comm)) = self.centrality_witness(z) {
            return Err(Error::NotCentral {
                generator: b.to_string(),
                commutator: self.render(&comm),
            });
        }
        Ok(self.cartan_projection_at(z, lambda))
    }

    /// Quadratic Casimir from dual bases of the normalised invariant form:
    /// `sum (G^-1)_ij h_i h_j + sum_alpha d_alpha (e_alpha f_alpha + f_alpha e_alpha)`
    /// with `G_ij = a_ij / d_j` and `d_alpha = (alpha, alpha) / 2`.
    pub fn casimir(&self) -> UEAElement {
        let rs = &self.rs;
        let r = rs.rank();
        let d = rs.symmetrizer();
        let gram: Vec<Vec<Q>> = (0..r)
            .map(|i| (0..r).map(|j| q(rs.cartan_matrix()[i][j]) / q(d[j])).collect())
            .collect();
        let inv = invert(&gram);
        let mut omega = UEAElement::zero();
        for i in 0..r {
            for j in 0..r {
                let hi = self.gen(BasisIndex::H(i));
                let hj = self.gen(BasisIndex::H(j));
                omega.add_scaled(&self.mul(&hi, &hj), &inv[i][j]);
            }
        }
        for (k, root) in rs.positive_roots().iter().enumerate() {
            let d_alpha = q(rs.inner(&root.coeffs, &root.coeffs)) / q(2);
            let e = self.gen(BasisIndex::E(k));
            let f = self.gen(BasisIndex::F(k));
            let sym = &self.mul(&e, &f) + &self.mul(&f, &e);
            omega.add_scaled(&sym, &d_alpha);
        }
        omega
    }

    /// All PBW monomials of degree at most `d`, sorted by descending degree
    /// and then by exponent vector.
    pub fn monomials_up_to(&self, d: u32) -> Vec<Monomial> {
        let dim = self.dim();
        let mut out = Vec::new();
        let mut cur = vec![0u32; dim];
        fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if pos == cur.len() {
                out.push(Monomial(cur.clone()));
                return;
            }
            for e in 0..=left {
                cur[pos] = e;
                rec(pos + 1, left - e, cur, out);
            }
            cur[pos] = 0;
        }
        rec(0, d, &mut cur, &mut out);
        out.sort_by(|a, b| b.degree().cmp(&a.degree()).then_with(|| a.cmp(b)));
        out
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        let lay = self.layout();
        let parts: Vec<String> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| {
                if *e == 1 {
                    lay.basis(i).to_string()
                } else {
                    format!("{}^{e}", lay.basis(i))
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Parses expressions such as `2*e1*f1 - 1/2*h1^2 + 3`: a signed sum of
    /// products of rationals and generators `e{k}`, `f{k}`, `h{i}` (1-based),
    /// each optionally raised to `^k`. Products are taken in the order
    /// written and straightened.
    pub fn parse(&self, s: &str) -> Result<UEAElement> {
        let bad = |msg: String| Error::Parse(format!("{msg} in element {s:?}"));
        let mut out = UEAElement::zero();
        let mut terms: Vec<(Q, String)> = Vec::new();
        let mut sign = Q::one();
        let mut term = String::new();
        for ch in s.chars().filter(|c| !c.is_whitespace()) {
            let inside_factor = matches!(term.chars().last(), Some('*' | '^' | '/'));
            match ch {
                '+' | '-' if term.is_empty() => {
                    if ch == '-' {
                        sign = -sign;
                    }
                }
                '+' | '-' if !inside_factor => {
                    terms.push((std::mem::replace(&mut sign, Q::one()), std::mem::take(&mut term)));
                    if ch == '-' {
                        sign = -sign;
                    }
                }
                _ => term.push(ch),
            }
        }
        if term.is_empty() {
            return Err(bad("empty term".into()));
        }
        terms.push((sign, term));
        for (sign, term) in terms {
            let mut acc = self.constant(sign);
            for factor in term.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (b, e.parse::<u32>().map_err(|_| bad(format!("bad exponent {e:?}")))?),
                    None => (factor, 1),
                };
                let x = match base.chars().next() {
                    Some(c @ ('e' | 'f' | 'h')) => {
                        let k: usize = base[1..].parse().map_err(|_| bad(format!("bad generator {base:?}")))?;
                        let limit = if c == 'h' { self.root_system().rank() } else { self.root_system().num_positive() };
                        if k == 0 || k > limit {
                            return Err(bad(format!("generator {base:?} out of range 1..={limit}")));
                        }
                        let b = match c {
                            'e' => BasisIndex::E(k - 1),
                            'f' => BasisIndex::F(k - 1),
                            _ => BasisIndex::H(k - 1),
                        };
                        self.gen(b)
                    }
                    _ => self.constant(crate::scalar::parse_q(base).map_err(|_| bad(format!("bad factor {base:?}")))?),
                };
                acc = self.mul(&acc, &self.pow(&x, exp));
            }
            out.add_scaled(&acc, &Q::one());
        }
        Ok(out)
    }

    /// Human-readable form with exact coefficients.
    pub fn render(&self, a: &UEAElement) -> String {
        if a.is_zero() {
            return "0".into();
        }
        a.terms()
            .iter()
            .map(|(m, c)| format!("({})*{}", crate::scalar::render_q(c), self.render_monomial(m)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn invert(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|r| !a[*r][col].is_zero()).expect("invertible Gram matrix");
        a.swap(col, piv);
        let inv = Q::one() / &a[col][col];
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in 0..2 * n {
                    let s = &f * &a[col][k];
                    a[r][k] -= s;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q_frac, q_pow};
    use BasisIndex::{E, F, H};

    fn sl2() -> Arc<Enveloping> {
        Enveloping::of_type(CartanType::A1, 5).unwrap()
    }

    #[test]
    fn straightening_ef() {
        let u = sl2();
        let ef = u.word(&[E(0), F(0)]);
        let expected = &u.word(&[F(0), E(0)]) + &u.gen(H(0));
        assert_eq!(ef, expected);
        assert_eq!(u.pbw_normalize(&[E(0), F(0)], Q::one(), SwapSchedule::LeftmostFirst), expected);
        // already ordered
        assert_eq!(u.word(&[F(0), F(0), E(0)]).len(), 1);
        assert_eq!(u.word(&[]), u.one());
    }

    #[test]
    fn efm_times_f() {
        let u = sl2();
        let ef = u.word(&[E(0), F(0)]);
        let lhs = u.mul(&ef, &u.gen(F(0)));
        let rhs = u.mul(&u.gen(E(0)), &u.word(&[F(0), F(0)]));
        assert_eq!(lhs, rhs);
        // f^2 e + 2 f h - 2 f
        let mut expected = u.word(&[F(0), F(0), E(0)]);
        expected.add_scaled(&u.word(&[F(0), H(0)]), &q(2));
        expected.add_scaled(&u.gen(F(0)), &q(-2));
        assert_eq!(lhs, expected);
        let he = u.commutator(&u.gen(H(0)), &u.gen(E(0)));
        assert_eq!(he, u.gen(E(0)).scaled(&q(2)));
        assert_eq!(u.mul(&lhs, &u.one()), lhs);
    }

    #[test]
    fn tau_and_sigma_small_cases() {
        let u = sl2();
        let e = u.gen(E(0));
        assert_eq!(u.tau(&e), -&e);
        assert_eq!(u.tau(&u.word(&[E(0), F(0)])), u.word(&[F(0), E(0)]));
        assert_eq!(u.tau(&u.one()), u.one());
        assert_eq!(u.sigma(&e), u.gen(F(0)));
        assert_eq!(u.sigma(&u.gen(H(0))), u.gen(H(0)));
    }

    #[test]
    fn casimir_sl2() {
        let u = sl2();
        let omega = u.casimir();
        // ef + fe + h^2/2 = 2fe + h + h^2/2
        let mut expected = u.word(&[F(0), E(0)]).scaled(&q(2));
        expected += &u.gen(H(0));
        expected.add_scaled(&u.word(&[H(0), H(0)]), &q_frac(1, 2));
        assert_eq!(omega, expected);
        assert_eq!(u.sigma(&omega), omega);
        assert!(u.centrality_witness(&u.tau(&omega)).is_none());
    }

    #[test]
    fn casimir_central_all_types() {
        for t in CartanType::ALL {
            let u = Enveloping::of_type(t, 5).unwrap();
            let omega = u.casimir();
            for x in 0..u.dim() {
                assert!(u.commutator(&u.gen_idx(x), &omega).is_zero(), "{t} {}", u.layout().basis(x));
            }
            assert_eq!(u.sigma(&omega), omega, "{t}");
        }
    }

    #[test]
    fn central_character_sl2() {
        let u = sl2();
        let omega = u.casimir();
        for m in -4..6 {
            let m = q(m);
            let lam = Weight::new(vec![m.clone()]);
            let chi = u.central_character(&omega, &lam).unwrap();
            assert_eq!(chi, &m + &m * &m / q(2));
            let linked = Weight::new(vec![-&m - q(2)]);
            assert_eq!(u.central_character(&omega, &linked).unwrap(), chi);
        }
        assert_eq!(u.central_character(&u.one(), &Weight::from_ints(&[3])).unwrap(), q(1));
        let err = u.central_character(&u.gen(H(0)), &Weight::from_ints(&[1])).unwrap_err();
        assert!(matches!(err, Error::NotCentral { .. }));
    }

    #[test]
    fn adjoint_action_examples() {
        let u = sl2();
        let r = q(3);
        assert_eq!(u.adjoint_group_action(0, &r, &u.one()).unwrap(), u.one());
        let h = u.gen(H(0));
        let expected = &h - &u.gen(E(0)).scaled(&(q(2) * &r));
        assert_eq!(u.adjoint_group_action(0, &r, &h).unwrap(), expected);
        let omega = u.casimir();
        assert_eq!(u.adjoint_group_action(0, &r, &omega).unwrap(), omega);
    }

    #[test]
    fn gauge_examples() {
        let u = sl2();
        let e = u.gen(E(0));
        for n in 0..4 {
            let a = e.scaled(&q_pow(5, n as i64));
            assert_eq!(u.gauge(&a, n), Val::Finite(0));
            assert!(u.is_in_deformation(&a, n));
        }
        assert_eq!(u.gauge(&e, 1), Val::Finite(-1));
        assert!(!u.is_in_deformation(&e, 1));
        let a = u.word(&[E(0), F(0)]).scaled(&q_pow(5, 4));
        // p^4 (fe + h): the degree-2 term dominates
        assert_eq!(u.gauge(&a, 1), Val::Finite(2));
        assert_eq!(u.gauge(&UEAElement::zero(), 3), Val::Infinite);
    }

    #[test]
    fn monomial_enumeration() {
        let u = sl2();
        let ms = u.monomials_up_to(3);
        assert_eq!(ms.len(), 20);
        assert_eq!(ms[0].degree(), 3);
        assert!(ms.last().unwrap().is_one());
    }

    #[test]
    fn parse_elements() {
        let alg = Enveloping::of_type(CartanType::A1, 5).unwrap();
        let e = alg.gen(BasisIndex::E(0));
        let f = alg.gen(BasisIndex::F(0));
        let h = alg.gen(BasisIndex::H(0));
        let want = {
            let mut w = alg.mul(&e, &f);
            w.add_scaled(&alg.pow(&h, 2), &crate::scalar::q_frac(-1, 2));
            w.add_scaled(&alg.one(), &q(3));
            w
        };
        assert_eq!(alg.parse("e1*f1 - 1/2*h1^2 + 3").unwrap(), want);
        assert_eq!(alg.parse("-f1").unwrap(), f.scaled(&q(-1)));
        for bad in ["", "e1 +", "e2", "x1", "h1^a", "1/0"] {
            assert!(alg.parse(bad).is_err(), "{bad:?}");
        }
    }
}
