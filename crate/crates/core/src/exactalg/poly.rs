//! Sparse multivariate polynomials over [`FieldElement`] scalars.
//!
//! Terms are keyed by exponent vectors under graded lexicographic order, so
//! the "leading term" and printed order are canonical. All arithmetic is
//! exact; division is only provided where exactness can be certified.

use super::field::FieldElement;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Exponent vector with graded-lex ordering (total degree first, then lex).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Expo(pub Vec<u32>);

impl Expo {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Expo) -> Expo {
        Expo(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference if `other` divides `self`.
    fn try_div(&self, other: &Expo) -> Option<Expo> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Expo(out))
    }
}

impl Ord for Expo {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Expo {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shared, ordered variable list. Polynomials interoperate only when their
/// variable lists are equal as sequences of names.
pub type VarSet = Arc<Vec<String>>;

pub fn vars(names: &[&str]) -> VarSet {
    Arc::new(names.iter().map(|s| s.to_string()).collect())
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: VarSet,
    terms: BTreeMap<Expo, FieldElement>,
}

impl MultiPoly {
    pub fn zero(vars: &VarSet) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::constant(vars, FieldElement::one())
    }

    pub fn constant(vars: &VarSet, c: FieldElement) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Expo(vec![0; vars.len()]), c);
        }
        p
    }

    pub fn int(vars: &VarSet, n: i64) -> Self {
        Self::constant(vars, FieldElement::from_int(n))
    }

    /// The `i`-th variable as a polynomial.
    pub fn var(vars: &VarSet, i: usize) -> Self {
        assert!(i < vars.len());
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Self::monomial(vars, Expo(e), FieldElement::one())
    }

    pub fn monomial(vars: &VarSet, e: Expo, c: FieldElement) -> Self {
        assert_eq!(e.0.len(), vars.len());
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &Expo) -> FieldElement {
        self.terms.get(e).cloned().unwrap_or_else(FieldElement::zero)
    }

    /// Largest term under graded lex; `None` for the zero polynomial.
    pub fn leading_term(&self) -> Option<(&Expo, &FieldElement)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Total degree; `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Expo::total).max()
    }

    /// Degree in variable `i`; `None` for zero.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e.0[i]).max()
    }

    /// `Some(d)` if homogeneous of total degree `d` (zero counts as
    /// homogeneous of every degree and reports `None`).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Expo::total);
        let first = it.next()?;
        if it.all(|t| t == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.total() == 0)
    }

    /// Constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<FieldElement> {
        if self.is_zero() {
            Some(FieldElement::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    fn assert_same_vars(&self, other: &MultiPoly) {
        assert_eq!(
            *self.vars, *other.vars,
            "polynomials over different variable lists"
        );
    }

    fn insert_add(&mut self, e: Expo, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.assert_same_vars(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.assert_same_vars(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.assert_same_vars(other);
        let mut out = Self::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.insert_add(e1.mul(e2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let mut out = Self::zero(&self.vars);
        for (e, k) in &self.terms {
            out.terms.insert(e.clone(), k * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> MultiPoly {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let k = e.0[i];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2.0[i] = k - 1;
            out.insert_add(e2, c * &FieldElement::from_int(i64::from(k)));
        }
        out
    }

    /// Divide every coefficient by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> MultiPoly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Exact division: `Some(q)` with `self = q * g` when the quotient exists,
    /// else `None`. Works for any nonzero divisor by repeated leading-term
    /// reduction, which decides divisibility by a single polynomial.
    pub fn try_divide(&self, g: &MultiPoly) -> Option<MultiPoly> {
        self.assert_same_vars(g);
        let (ge, gc) = g.leading_term()?;
        let ge = ge.clone();
        let gc_inv = gc.inv().ok()?;
        let mut rem = self.clone();
        let mut quo = Self::zero(&self.vars);
        while let Some((re, rc)) = rem.leading_term() {
            let qe = re.try_div(&ge)?;
            let qc = rc * &gc_inv;
            let t = Self::monomial(&self.vars, qe, qc);
            rem = rem.sub(&t.mul(g));
            quo = quo.add(&t);
        }
        Some(quo)
    }

    /// Exact division that panics on failure; use when divisibility is a
    /// structural invariant.
    pub fn divide_exact(&self, g: &MultiPoly) -> MultiPoly {
        self.try_divide(g)
            .unwrap_or_else(|| panic!("inexact polynomial division"))
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = FieldElement::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&e.0) {
                if k > 0 {
                    t = &t * &x.pow(k);
                }
            }
            acc += &t;
        }
        acc
    }

    /// Substitute `images[i]` for variable `i`. All images must share a
    /// variable list, which becomes the result's list.
    pub fn substitute(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(images.len(), self.vars.len());
        let tvars = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        for im in images {
            assert_eq!(*im.vars, *tvars, "substitution images over different variables");
        }
        // Cache powers of each image to avoid recomputation across terms.
        let mut pow_cache: Vec<Vec<MultiPoly>> =
            images.iter().map(|im| vec![MultiPoly::one(&tvars), im.clone()]).collect();
        let power = |i: usize, k: u32, cache: &mut Vec<Vec<MultiPoly>>| -> MultiPoly {
            while cache[i].len() <= k as usize {
                let next = cache[i].last().unwrap().mul(&images[i]);
                cache[i].push(next);
            }
            cache[i][k as usize].clone()
        };
        let mut acc = MultiPoly::zero(&tvars);
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(&tvars, c.clone());
            for (i, &k) in e.0.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&power(i, k, &mut pow_cache));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Same polynomial over a renamed variable list of equal length.
    pub fn rename_vars(&self, new_vars: &VarSet) -> MultiPoly {
        assert_eq!(new_vars.len(), self.vars.len());
        MultiPoly {
            vars: new_vars.clone(),
            terms: self.terms.clone(),
        }
    }

    /// Re-express over a larger variable list containing every variable of
    /// `self` by name.
    pub fn embed(&self, target: &VarSet) -> MultiPoly {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                target
                    .iter()
                    .position(|t| t == v)
                    .unwrap_or_else(|| panic!("variable {v} missing from target list"))
            })
            .collect();
        let mut out = MultiPoly::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = vec![0u32; target.len()];
            for (i, &k) in e.0.iter().enumerate() {
                e2[map[i]] = k;
            }
            out.terms.insert(Expo(e2), c.clone());
        }
        out
    }

    /// Coefficients of `self` viewed as a polynomial in variable `i`, indexed
    /// by the power of that variable. Entries live in the same variable list
    /// (with variable `i` absent from their support).
    pub fn coeffs_in(&self, i: usize) -> Vec<MultiPoly> {
        let d = match self.degree_in(i) {
            None => return vec![],
            Some(d) => d,
        };
        let mut out = vec![Self::zero(&self.vars); d as usize + 1];
        for (e, c) in &self.terms {
            let k = e.0[i] as usize;
            let mut e2 = e.clone();
            e2.0[i] = 0;
            out[k].terms.insert(e2, c.clone());
        }
        out
    }

    /// Rebuild from coefficients in variable `i` (inverse of `coeffs_in`).
    pub fn from_coeffs_in(vars: &VarSet, i: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = Self::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, v) in &c.terms {
                assert_eq!(e.0[i], 0, "coefficient involves the main variable");
                let mut e2 = e.clone();
                e2.0[i] = u32::try_from(k).unwrap();
                out.insert_add(e2, v.clone());
            }
        }
        out
    }

    /// Greatest common monomial divisor of all terms (zero gives the empty
    /// exponent vector).
    pub fn monomial_content(&self) -> Expo {
        let n = self.vars.len();
        let mut min = vec![u32::MAX; n];
        for e in self.terms.keys() {
            for (m, &k) in min.iter_mut().zip(&e.0) {
                *m = (*m).min(k);
            }
        }
        if self.terms.is_empty() {
            min = vec![0; n];
        }
        Expo(min)
    }

    /// Divide out a monomial (must divide every term).
    pub fn divide_monomial(&self, e: &Expo) -> MultiPoly {
        let mut out = Self::zero(&self.vars);
        for (t, c) in &self.terms {
            let q = t.try_div(e).expect("monomial does not divide every term");
            out.terms.insert(q, c.clone());
        }
        out
    }

    /// Discriminants appearing in any coefficient (for field-membership checks).
    pub fn discriminant_used(&self) -> Option<i64> {
        self.terms.values().find_map(|c| c.discriminant())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::parse::poly_print(self))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::parse::poly_print(self))
    }
}
