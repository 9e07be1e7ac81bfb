//! Polynomial gcds and squarefree decomposition.
//!
//! Multivariate gcds use a primitive pseudo-remainder sequence, recursing on
//! the number of variables; the result is normalized to leading coefficient 1
//! under graded lex. Squarefree decomposition of binary forms strips the
//! monomial part, dehomogenizes, and runs Yun's algorithm.

use super::field::FieldElement;
use super::poly::{Expo, MultiPoly, VarSet};

/// Monic gcd (leading coefficient 1 under graded lex). `gcd(0, 0) = 0`.
pub fn gcd(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    gcd_raw(f, g).monic()
}

/// Monic gcd of a family; empty input or all-zero input gives 0.
pub fn gcd_many<'a>(polys: impl IntoIterator<Item = &'a MultiPoly>) -> MultiPoly {
    let mut acc: Option<MultiPoly> = None;
    for p in polys {
        acc = Some(match acc {
            None => p.clone(),
            Some(a) => {
                if a.is_constant() && !a.is_zero() {
                    return a.monic();
                }
                gcd_raw(&a, p)
            }
        });
    }
    acc.map(|a| a.monic()).unwrap_or_else(|| panic!("gcd of empty family"))
}

fn gcd_raw(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    // Split off monomial contents: gcd(m1*f1, m2*g1) = gcd(m1,m2)*gcd(f1,g1).
    let ef = f.monomial_content();
    let eg = g.monomial_content();
    let common = Expo(
        ef.0.iter()
            .zip(&eg.0)
            .map(|(a, b)| (*a).min(*b))
            .collect(),
    );
    let f1 = f.divide_monomial(&ef);
    let g1 = g.divide_monomial(&eg);
    let core = gcd_core(&f1, &g1);
    core.mul(&MultiPoly::monomial(f.vars(), common, FieldElement::one()))
}

fn gcd_core(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    // Pick the highest-index variable occurring in either argument.
    let n = f.num_vars();
    let var = (0..n)
        .rev()
        .find(|&i| f.degree_in(i).unwrap_or(0) > 0 || g.degree_in(i).unwrap_or(0) > 0);
    let var = match var {
        None => return MultiPoly::one(f.vars()), // both constant, both nonzero
        Some(v) => v,
    };
    let df = f.degree_in(var).unwrap_or(0);
    let dg = g.degree_in(var).unwrap_or(0);
    if df == 0 {
        // gcd cannot involve `var`; it divides every coefficient of g.
        return gcd_raw(f, &content_in(g, var));
    }
    if dg == 0 {
        return gcd_raw(&content_in(f, var), g);
    }
    let cf = content_in(f, var);
    let cg = content_in(g, var);
    let pf = f.divide_exact(&cf);
    let pg = g.divide_exact(&cg);
    let cont_gcd = gcd_raw(&cf, &cg);
    let prim_gcd = prs_gcd(&pf, &pg, var);
    cont_gcd.mul(&prim_gcd)
}

/// Content of `p` with respect to variable `var`: gcd of its coefficients.
fn content_in(p: &MultiPoly, var: usize) -> MultiPoly {
    let coeffs = p.coeffs_in(var);
    gcd_many(coeffs.iter().filter(|c| !c.is_zero()))
}

fn coeff_deg(v: &[MultiPoly]) -> Option<usize> {
    if v.is_empty() {
        None
    } else {
        Some(v.len() - 1)
    }
}

fn trim(v: &mut Vec<MultiPoly>) {
    while v.last().is_some_and(MultiPoly::is_zero) {
        v.pop();
    }
}

/// Pseudo-remainder of `u` by `v` (coefficient vectors in the main variable).
fn prem(u: &[MultiPoly], v: &[MultiPoly]) -> Vec<MultiPoly> {
    let dv = coeff_deg(v).expect("pseudo-division by zero");
    let lv = v.last().unwrap();
    let mut r = u.to_vec();
    trim(&mut r);
    while coeff_deg(&r).is_some_and(|dr| dr >= dv) {
        let dr = r.len() - 1;
        let lr = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c = c.mul(lv);
        }
        for (j, vj) in v.iter().enumerate() {
            let idx = dr - dv + j;
            r[idx] = r[idx].sub(&lr.mul(vj));
        }
        trim(&mut r);
    }
    r
}

/// Gcd of two polynomials primitive in `var`, both of positive degree there.
fn prs_gcd(f: &MultiPoly, g: &MultiPoly, var: usize) -> MultiPoly {
    let vars = f.vars().clone();
    let mut a = f.coeffs_in(var);
    let mut b = g.coeffs_in(var);
    if coeff_deg(&a) < coeff_deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = prem(&a, &b);
        if r.is_empty() {
            // b divides a up to content; b is already primitive.
            return MultiPoly::from_coeffs_in(&vars, var, &b);
        }
        if r.len() == 1 {
            // A remainder of degree 0 in `var`: the primitive gcd is constant.
            return MultiPoly::one(&vars);
        }
        let rp = MultiPoly::from_coeffs_in(&vars, var, &r);
        let cont = content_in(&rp, var);
        let prim = rp.divide_exact(&cont);
        a = b;
        b = prim.coeffs_in(var);
    }
}

// ---------------------------------------------------------------------------
// Univariate helpers over the coefficient field (dense Vec<FieldElement>,
// index = power, no trailing zeros).

fn utrim(v: &mut Vec<FieldElement>) {
    while v.last().is_some_and(FieldElement::is_zero) {
        v.pop();
    }
}

fn uderiv(v: &[FieldElement]) -> Vec<FieldElement> {
    let mut out: Vec<FieldElement> = v
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * &FieldElement::from_int(k as i64))
        .collect();
    utrim(&mut out);
    out
}

fn umonic(v: &[FieldElement]) -> Vec<FieldElement> {
    match v.last() {
        None => vec![],
        Some(lc) => {
            let inv = lc.inv().unwrap();
            v.iter().map(|c| c * &inv).collect()
        }
    }
}

/// Remainder of u by v (v nonzero).
fn urem(u: &[FieldElement], v: &[FieldElement]) -> Vec<FieldElement> {
    let dv = v.len() - 1;
    let lv_inv = v.last().unwrap().inv().unwrap();
    let mut r = u.to_vec();
    utrim(&mut r);
    while r.len() > dv {
        let dr = r.len() - 1;
        let q = r.last().unwrap() * &lv_inv;
        for (j, vj) in v.iter().enumerate() {
            let t = &q * vj;
            r[dr - dv + j] = &r[dr - dv + j] - &t;
        }
        utrim(&mut r);
    }
    r
}

fn uquot_exact(u: &[FieldElement], v: &[FieldElement]) -> Vec<FieldElement> {
    let dv = v.len() - 1;
    let lv_inv = v.last().unwrap().inv().unwrap();
    let mut r = u.to_vec();
    utrim(&mut r);
    let mut q = vec![FieldElement::zero(); r.len().saturating_sub(dv)];
    while r.len() > dv {
        let dr = r.len() - 1;
        let c = r.last().unwrap() * &lv_inv;
        q[dr - dv] = c.clone();
        for (j, vj) in v.iter().enumerate() {
            let t = &c * vj;
            r[dr - dv + j] = &r[dr - dv + j] - &t;
        }
        utrim(&mut r);
    }
    assert!(r.is_empty(), "inexact univariate division");
    utrim(&mut q);
    q
}

fn ugcd(u: &[FieldElement], v: &[FieldElement]) -> Vec<FieldElement> {
    let mut a = u.to_vec();
    let mut b = v.to_vec();
    utrim(&mut a);
    utrim(&mut b);
    while !b.is_empty() {
        let r = urem(&a, &b);
        a = b;
        b = r;
    }
    umonic(&a)
}

fn usub(u: &[FieldElement], v: &[FieldElement]) -> Vec<FieldElement> {
    let mut out = vec![FieldElement::zero(); u.len().max(v.len())];
    for (i, c) in u.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in v.iter().enumerate() {
        out[i] -= c;
    }
    utrim(&mut out);
    out
}

/// Yun's squarefree decomposition of a monic univariate polynomial.
/// Returns (factor, multiplicity) pairs with monic squarefree factors.
fn yun(f: &[FieldElement]) -> Vec<(Vec<FieldElement>, u32)> {
    let mut out = Vec::new();
    if f.len() <= 1 {
        return out;
    }
    let df = uderiv(f);
    let g = ugcd(f, &df);
    let mut c = uquot_exact(f, &g);
    let mut d = usub(&uquot_exact(&df, &g), &uderiv(&c));
    let mut mult = 1u32;
    while c.len() > 1 {
        let p = ugcd(&c, &d);
        if p.len() > 1 {
            out.push((p.clone(), mult));
        }
        c = uquot_exact(&c, &p);
        d = usub(&uquot_exact(&d, &p), &uderiv(&c));
        mult += 1;
    }
    out
}

// ---------------------------------------------------------------------------
// Squarefree decomposition of binary forms.

#[derive(Debug, Clone)]
pub struct SquarefreeFactor {
    /// Monic (graded lex) irreducible-free factor: squarefree, pairwise coprime
    /// with the other factors.
    pub factor: MultiPoly,
    pub multiplicity: u32,
}

#[derive(Debug, Clone)]
pub struct SquarefreeDecomposition {
    /// Constant making `unit * prod(factor^multiplicity)` equal the input.
    pub unit: FieldElement,
    pub factors: Vec<SquarefreeFactor>,
}

impl SquarefreeDecomposition {
    /// Product of the factors with the given multiplicity (monic; 1 if none).
    pub fn multiplicity_part(&self, vars: &VarSet, mult: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(vars);
        for f in &self.factors {
            if f.multiplicity == mult {
                acc = acc.mul(&f.factor);
            }
        }
        acc
    }

    /// Monic product of all distinct factors (the squarefree part).
    pub fn radical(&self, vars: &VarSet) -> MultiPoly {
        let mut acc = MultiPoly::one(vars);
        for f in &self.factors {
            acc = acc.mul(&f.factor);
        }
        acc
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.factors.iter().map(|f| f.multiplicity).max().unwrap_or(0)
    }

    pub fn reconstruct(&self, vars: &VarSet) -> MultiPoly {
        let mut acc = MultiPoly::constant(vars, self.unit.clone());
        for f in &self.factors {
            acc = acc.mul(&f.factor.pow(f.multiplicity));
        }
        acc
    }
}

/// Squarefree decomposition of a nonzero homogeneous form in two variables.
///
/// The two possible monomial factors appear as factors of degree 1; the rest
/// come from Yun's algorithm on the dehomogenization and are rehomogenized.
pub fn squarefree_decompose_binary(f: &MultiPoly) -> SquarefreeDecomposition {
    assert!(!f.is_zero(), "squarefree decomposition of zero");
    assert_eq!(f.num_vars(), 2, "expected a binary form");
    let d = f
        .homogeneous_degree()
        .expect("squarefree decomposition requires a homogeneous form");
    let vars = f.vars();
    let mono = f.monomial_content();
    let g = f.divide_monomial(&mono);
    let mut factors = Vec::new();
    for i in 0..2 {
        if mono.0[i] > 0 {
            factors.push(SquarefreeFactor {
                factor: MultiPoly::var(vars, i),
                multiplicity: mono.0[i],
            });
        }
    }
    // Dehomogenize with respect to the second variable: u = x, y = 1. After
    // stripping the monomial content the form has a term free of y, so the
    // univariate degree equals the degree of g and no root escapes to
    // infinity.
    let gd = d - mono.total();
    let mut uni = vec![FieldElement::zero(); gd as usize + 1];
    for (e, c) in g.terms() {
        uni[e.0[0] as usize] = c.clone();
    }
    for (p, mult) in yun(&umonic(&uni)) {
        // Rehomogenize to degree (deg p).
        let pd = p.len() - 1;
        let mut hom = MultiPoly::zero(vars);
        for (k, c) in p.iter().enumerate() {
            if !c.is_zero() {
                hom = hom.add(&MultiPoly::monomial(
                    vars,
                    Expo(vec![k as u32, (pd - k) as u32]),
                    c.clone(),
                ));
            }
        }
        factors.push(SquarefreeFactor {
            factor: hom.monic(),
            multiplicity: mult,
        });
    }
    // Determine the unit by exact division.
    let mut prod = MultiPoly::one(vars);
    for fac in &factors {
        prod = prod.mul(&fac.factor.pow(fac.multiplicity));
    }
    let unit = f
        .divide_exact(&prod)
        .as_constant()
        .expect("factor product must match up to a constant");
    SquarefreeDecomposition { unit, factors }
}

/// Is a nonzero binary form squarefree? Decided by
/// gcd(f, df/dx, df/dy): a repeated factor divides both partials.
pub fn is_squarefree_binary(f: &MultiPoly) -> bool {
    assert!(!f.is_zero());
    let g = gcd_many([f, &f.derivative(0), &f.derivative(1)].into_iter());
    g.is_constant()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::FieldCtx;
    use crate::exactalg::parse::poly_parse;
    use crate::exactalg::poly::vars;

    fn p(src: &str) -> MultiPoly {
        poly_parse(src, &vars(&["x0", "x1"]), &FieldCtx::Rational).unwrap()
    }

    fn p4(src: &str) -> MultiPoly {
        poly_parse(src, &vars(&["x0", "x1", "x2", "x3"]), &FieldCtx::Rational).unwrap()
    }

    #[test]
    fn gcd_univariate() {
        let f = p("x0^2 - x1^2");
        let g = p("x0^2 - 2*x0*x1 + x1^2");
        assert_eq!(gcd(&f, &g), p("x0 - x1"));
    }

    #[test]
    fn gcd_with_monomial_content() {
        let f = p("x0^3*x1 + x0^2*x1^2");
        let g = p("x0^2*x1^2 - x0^2*x1^2 + x0^2*x1^3");
        assert_eq!(gcd(&f, &g), p("x0^2*x1"));
    }

    #[test]
    fn gcd_multivariate() {
        let f = p4("(x0 + x1*x2)*(x2 - x3)");
        let g = p4("(x0 + x1*x2)*(x2 + x3)");
        assert_eq!(gcd(&f, &g), p4("x1*x2 + x0"));
        let cop = gcd(&p4("x0*x2 + 1"), &p4("x1*x3 + 1"));
        assert!(cop.is_constant());
    }

    #[test]
    fn gcd_divides_both() {
        let f = p4("(x0^2 + x1^2 + x2*x3)*(x0 - x2)^2");
        let g = p4("(x0^2 + x1^2 + x2*x3)^2*(x1 + x3)");
        let h = gcd(&f, &g);
        assert!(f.try_divide(&h).is_some());
        assert!(g.try_divide(&h).is_some());
        assert_eq!(h, p4("x0^2 + x1^2 + x2*x3"));
    }

    #[test]
    fn squarefree_binary_forms() {
        // x0^3*x1*(x0+x1)^2 : factors x0^3, x1, (x0+x1)^2
        let f = p("x0^3*x1*(x0 + x1)^2");
        let dec = squarefree_decompose_binary(&f);
        assert_eq!(dec.reconstruct(f.vars()), f);
        let mut mults: Vec<(String, u32)> = dec
            .factors
            .iter()
            .map(|sf| (sf.factor.to_string(), sf.multiplicity))
            .collect();
        mults.sort();
        assert_eq!(
            mults,
            vec![
                ("x0".to_string(), 3),
                ("x0 + x1".to_string(), 2),
                ("x1".to_string(), 1)
            ]
        );
        assert!(!is_squarefree_binary(&f));
    }

    #[test]
    fn squarefree_test_uses_both_partials() {
        // Every term is divisible by x1, so gcd(f, df/dx0) is divisible by x1
        // even though f is squarefree; the two-partial test must say squarefree.
        let f = p("4*x0^3*x1 + 8*x0^2*x1^2 + 8*x0*x1^3 + 4*x1^4");
        // f = 4*x1*(x0+x1)*(x0^2+x0*x1+x1^2), squarefree.
        let g1 = gcd(&f, &f.derivative(0));
        assert!(!g1.is_constant());
        assert!(is_squarefree_binary(&f));
        let dec = squarefree_decompose_binary(&f);
        assert_eq!(dec.max_multiplicity(), 1);
        assert_eq!(dec.reconstruct(f.vars()), f);
    }

    #[test]
    fn perfect_square_detection() {
        let f = p("(x0^2 - 2*x1^2)^2");
        let dec = squarefree_decompose_binary(&f);
        assert_eq!(dec.factors.len(), 1);
        assert_eq!(dec.factors[0].multiplicity, 2);
    }

    #[test]
    fn decomposition_over_quadratic_field() {
        let v = vars(&["x0", "x1"]);
        let k = FieldCtx::Quadratic(-3);
        // (x0 - w*x1)^2 * (x0 + w*x1)
        let f = poly_parse("(x0 - w*x1)^2*(x0 + w*x1)", &v, &k).unwrap();
        let dec = squarefree_decompose_binary(&f);
        assert_eq!(dec.reconstruct(&v), f);
        let mults: Vec<u32> = dec.factors.iter().map(|x| x.multiplicity).collect();
        let mut sorted = mults.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 2]);
    }
}
