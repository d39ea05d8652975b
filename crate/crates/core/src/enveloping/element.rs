use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{q, Q};

/// PBW exponent vector in the order `f_1..f_N, h_1..h_r, e_1..e_N`; the
/// monomial it denotes is the ordered product `f^B h^C e^A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(dim: usize) -> Self {
        Monomial(vec![0; dim])
    }

    pub fn generator(dim: usize, idx: usize) -> Self {
        let mut m = Self::one(dim);
        m.0[idx] = 1;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|e| *e == 0)
    }

    /// Generator indices with multiplicity, left to right.
    pub fn factors(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, e)| std::iter::repeat(i).take(*e as usize))
            .collect()
    }

    pub fn first_factor(&self) -> Option<usize> {
        self.0.iter().position(|e| *e > 0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }
}

/// Finite linear combination of PBW monomials with exact coefficients.
/// No zero coefficients are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UEAElement {
    terms: BTreeMap<Monomial, Q>,
}

impl UEAElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one(dim: usize) -> Self {
        Self::monomial(Monomial::one(dim), Q::one())
    }

    pub fn constant(dim: usize, c: Q) -> Self {
        Self::monomial(Monomial::one(dim), c)
    }

    pub fn monomial(m: Monomial, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (m, c) in it {
            out.add_term(m, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Q> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// PBW degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &UEAElement, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x * c);
        }
    }

    pub fn scaled(&self, c: &Q) -> UEAElement {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }
}

impl Add for &UEAElement {
    type Output = UEAElement;
    fn add(self, rhs: &UEAElement) -> UEAElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Q::one());
        out
    }
}

impl Sub for &UEAElement {
    type Output = UEAElement;
    fn sub(self, rhs: &UEAElement) -> UEAElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &q(-1));
        out
    }
}

impl AddAssign<&UEAElement> for UEAElement {
    fn add_assign(&mut self, rhs: &UEAElement) {
        self.add_scaled(rhs, &Q::one());
    }
}

impl Neg for &UEAElement {
    type Output = UEAElement;
    fn neg(self) -> UEAElement {
        self.scaled(&q(-1))
    }
}

/// Displays with generic generator names `f1.., h1.., e1..`; use
/// [`crate::enveloping::Enveloping::render`] for layout-aware names.
impl fmt::Display for UEAElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, e) in m.0.iter().enumerate() {
                if *e > 0 {
                    write!(f, "*g{i}^{e}")?;
                }
            }
        }
        Ok(())
    }
}
