//! Monoidal surfaces: degree-d surfaces in P^3 containing the line
//! V(x0, x1) with multiplicity d-1, so the defining polynomial is
//!
//! ```text
//! A_d(x0,x1) + B_{d-1}(x0,x1)*x2 + C_{d-1}(x0,x1)*x3
//! ```
//!
//! This module validates such data, provides the canonical cubic and quartic
//! constructors, computes the curve traced on the exceptional divisor of the
//! blow-up of the line together with its pinch divisor, and carries the
//! degree bookkeeping for webs of monoidal Cremona transformations.

use crate::exactalg::{
    gcd_many, linear_substitution, poly_parse, vars, Expo, FieldCtx, FieldElement,
    MultiPoly, VarSet,
};

pub fn binary_vars() -> VarSet {
    vars(&["x0", "x1"])
}

pub fn ambient_vars() -> VarSet {
    vars(&["x0", "x1", "x2", "x3"])
}

pub fn parameter_vars() -> VarSet {
    vars(&["t0", "t1"])
}

#[derive(Debug, thiserror::Error)]
pub enum MonoidalError {
    #[error("degree must be at least 3, got {0}")]
    DegreeTooSmall(u32),
    #[error("form {form} must be homogeneous of degree {expected} (or zero), found degree {found:?}")]
    DegreeMismatch {
        form: &'static str,
        expected: u32,
        found: Option<u32>,
    },
    #[error("surface is a cone: the two degree-(d-1) forms are proportional")]
    Cone,
    #[error("surface is reducible: the three forms share the factor {common}")]
    Reducible { common: MultiPoly },
    #[error("parameter {lambda} is forbidden: its square must avoid 0, 1, 9")]
    ForbiddenLambda { lambda: FieldElement },
    #[error("parameter required for this canonical kind")]
    MissingLambda,
    #[error("out-of-range degree {d} for {family} moduli count (needs d >= {min})")]
    ModuliRange { family: &'static str, d: u32, min: u32 },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("line forms must be two independent linear forms")]
    BadLine,
    #[error("line multiplicity below {needed}: surface is not monoidal along it")]
    MultiplicityTooLow { needed: u32 },
}

/// A validated monoidal surface, held as its three binary forms.
#[derive(Debug, Clone)]
pub struct MonoidalSurface {
    d: u32,
    a: MultiPoly,
    b: MultiPoly,
    c: MultiPoly,
}

fn check_degree(
    f: &MultiPoly,
    expected: u32,
    name: &'static str,
    allow_zero: bool,
) -> Result<(), MonoidalError> {
    if f.is_zero() {
        if allow_zero {
            return Ok(());
        }
        return Err(MonoidalError::DegreeMismatch {
            form: name,
            expected,
            found: None,
        });
    }
    if f.homogeneous_degree() != Some(expected) {
        return Err(MonoidalError::DegreeMismatch {
            form: name,
            expected,
            found: f.homogeneous_degree(),
        });
    }
    Ok(())
}

/// Are two nonzero forms scalar multiples of each other (or one zero)?
pub(crate) fn proportional(f: &MultiPoly, g: &MultiPoly) -> bool {
    if f.is_zero() || g.is_zero() {
        return true;
    }
    let (ef, cf) = f.leading_term().unwrap();
    let (eg, cg) = g.leading_term().unwrap();
    if ef != eg {
        return false;
    }
    let ratio = cg / cf;
    *g == f.scale(&ratio)
}

impl MonoidalSurface {
    /// Validate `(A, B, C, d)`. `A` may be zero; `B`, `C` must be forms of
    /// degree d-1, non-proportional (else the surface is a cone), and the
    /// three forms may not share a common factor (else reducible).
    pub fn validate(
        a: MultiPoly,
        b: MultiPoly,
        c: MultiPoly,
        d: u32,
    ) -> Result<Self, MonoidalError> {
        if d < 3 {
            return Err(MonoidalError::DegreeTooSmall(d));
        }
        check_degree(&a, d, "A", true)?;
        check_degree(&b, d - 1, "B", true)?;
        check_degree(&c, d - 1, "C", true)?;
        if proportional(&b, &c) {
            return Err(MonoidalError::Cone);
        }
        let g = gcd_many([&a, &b, &c].into_iter().filter(|f| !f.is_zero()));
        if !g.is_constant() {
            return Err(MonoidalError::Reducible { common: g });
        }
        Ok(MonoidalSurface { d, a, b, c })
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn forms(&self) -> (&MultiPoly, &MultiPoly, &MultiPoly) {
        (&self.a, &self.b, &self.c)
    }

    /// The degree-d polynomial A + B*x2 + C*x3 in (x0..x3).
    pub fn defining_polynomial(&self) -> MultiPoly {
        let av = ambient_vars();
        let x2 = MultiPoly::var(&av, 2);
        let x3 = MultiPoly::var(&av, 3);
        self.a
            .embed(&av)
            .add(&self.b.embed(&av).mul(&x2))
            .add(&self.c.embed(&av).mul(&x3))
    }

    /// The curve traced on the exceptional divisor E = line x plane-pencil by
    /// the blow-up: B(t)y1 + C(t)y2 = 0, bidegree (1, d-1), with the section
    /// map t -> [-C(t), B(t)]. When B and C share a factor the curve picks up
    /// fiber components; the shared factor is reported.
    pub fn sigma_curve(&self) -> SigmaCurve {
        let tv = parameter_vars();
        let b = self.b.rename_vars(&tv);
        let c = self.c.rename_vars(&tv);
        let g = crate::exactalg::gcd(&b, &c);
        let common = if g.is_constant() { None } else { Some(g.clone()) };
        let (b1, c1) = match &common {
            None => (b.clone(), c.clone()),
            Some(g) => (b.divide_exact(g), c.divide_exact(g)),
        };
        SigmaCurve {
            b,
            c,
            common,
            section: [c1.neg(), b1],
        }
    }

    /// Branch divisor of the section component of the curve above, as the
    /// Jacobian determinant of (B, C) with respect to (t0, t1): a binary form
    /// of degree 2d-4 when B, C are coprime. If they share a factor, the
    /// Jacobian of the cofactors is returned together with that factor.
    pub fn pinch_divisor(&self) -> MonoidalPinchDivisor {
        let sigma = self.sigma_curve();
        let (b, c) = match &sigma.common {
            None => (sigma.b.clone(), sigma.c.clone()),
            Some(g) => (sigma.b.divide_exact(g), sigma.c.divide_exact(g)),
        };
        let wronskian = b
            .derivative(0)
            .mul(&c.derivative(1))
            .sub(&b.derivative(1).mul(&c.derivative(0)));
        MonoidalPinchDivisor {
            wronskian,
            shared_factor: sigma.common,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SigmaCurve {
    /// B in parameters (t0, t1).
    pub b: MultiPoly,
    /// C in parameters (t0, t1).
    pub c: MultiPoly,
    /// Common factor of B and C, if any (fiber components of the curve).
    pub common: Option<MultiPoly>,
    /// Section map t -> [-C1(t), B1(t)] on the cofactors.
    pub section: [MultiPoly; 2],
}

#[derive(Debug, Clone)]
pub struct MonoidalPinchDivisor {
    /// Jacobian form of the (cofactor) pair; degree 2d-4 minus twice the
    /// degree of the shared factor.
    pub wronskian: MultiPoly,
    pub shared_factor: Option<MultiPoly>,
}

/// The canonical monoidal surfaces of degrees 3 and 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonoidalKind {
    /// x0^2*x2 + x1^2*x3
    Cubic1,
    /// x1^3 + x0*x1*x2 + x0^2*x3
    Cubic2,
    /// x0^2*x1^2 + (x0^3+L*x0*x1^2)*x2 + (x1^3+L*x0^2*x1)*x3, L^2 != 0,1,9
    QuarticI,
    /// Same pencil as I with A = 0
    QuarticII,
    /// L = 3 with A = x0^2*x1^2
    QuarticIII,
    /// L = 3 with A = 0
    QuarticIV,
    /// x0^2*x1^2 + (x0^2+x1^2)*(x0*x2 + x1*x3)
    QuarticV,
    /// x0^2*x1^2 + (x0+x1)^2*(x0*x2 + x1*x3)
    QuarticVI,
    /// x0^2*x1^2 + (x0+x1)*(x0^2*x2 + x1^2*x3)
    QuarticVII,
}

impl MonoidalKind {
    pub const ALL: [MonoidalKind; 9] = [
        MonoidalKind::Cubic1,
        MonoidalKind::Cubic2,
        MonoidalKind::QuarticI,
        MonoidalKind::QuarticII,
        MonoidalKind::QuarticIII,
        MonoidalKind::QuarticIV,
        MonoidalKind::QuarticV,
        MonoidalKind::QuarticVI,
        MonoidalKind::QuarticVII,
    ];

    pub fn needs_parameter(self) -> bool {
        matches!(self, MonoidalKind::QuarticI | MonoidalKind::QuarticII)
    }

    pub fn name(self) -> &'static str {
        match self {
            MonoidalKind::Cubic1 => "cubic-1",
            MonoidalKind::Cubic2 => "cubic-2",
            MonoidalKind::QuarticI => "quartic-i",
            MonoidalKind::QuarticII => "quartic-ii",
            MonoidalKind::QuarticIII => "quartic-iii",
            MonoidalKind::QuarticIV => "quartic-iv",
            MonoidalKind::QuarticV => "quartic-v",
            MonoidalKind::QuarticVI => "quartic-vi",
            MonoidalKind::QuarticVII => "quartic-vii",
        }
    }
}

fn bform(src: &str) -> MultiPoly {
    poly_parse(src, &binary_vars(), &FieldCtx::Rational).expect("builtin form")
}

/// Build one of the canonical surfaces. `lambda` is required for the two
/// one-parameter quartic families and must satisfy lambda^2 not in {0, 1, 9}.
pub fn canonical_monoidal(
    kind: MonoidalKind,
    lambda: Option<FieldElement>,
) -> Result<MonoidalSurface, MonoidalError> {
    let bv = binary_vars();
    let lam = |l: &FieldElement| -> Result<(MultiPoly, MultiPoly), MonoidalError> {
        let sq = l.pow(2);
        for bad in [0i64, 1, 9] {
            if sq == FieldElement::from_int(bad) {
                return Err(MonoidalError::ForbiddenLambda { lambda: l.clone() });
            }
        }
        let lpoly = MultiPoly::constant(&bv, l.clone());
        let b = bform("x0^3").add(&bform("x0*x1^2").mul(&lpoly));
        let c = bform("x1^3").add(&bform("x0^2*x1").mul(&lpoly));
        Ok((b, c))
    };
    let zero = MultiPoly::zero(&bv);
    let a22 = bform("x0^2*x1^2");
    let (a, b, c, d) = match kind {
        MonoidalKind::Cubic1 => (zero, bform("x0^2"), bform("x1^2"), 3),
        MonoidalKind::Cubic2 => (bform("x1^3"), bform("x0*x1"), bform("x0^2"), 3),
        MonoidalKind::QuarticI => {
            let l = lambda.ok_or(MonoidalError::MissingLambda)?;
            let (b, c) = lam(&l)?;
            (a22, b, c, 4)
        }
        MonoidalKind::QuarticII => {
            let l = lambda.ok_or(MonoidalError::MissingLambda)?;
            let (b, c) = lam(&l)?;
            (zero, b, c, 4)
        }
        MonoidalKind::QuarticIII => (
            a22,
            bform("x0^3 + 3*x0*x1^2"),
            bform("x1^3 + 3*x0^2*x1"),
            4,
        ),
        MonoidalKind::QuarticIV => (
            zero,
            bform("x0^3 + 3*x0*x1^2"),
            bform("x1^3 + 3*x0^2*x1"),
            4,
        ),
        MonoidalKind::QuarticV => (
            a22,
            bform("(x0^2 + x1^2)*x0"),
            bform("(x0^2 + x1^2)*x1"),
            4,
        ),
        MonoidalKind::QuarticVI => (
            a22,
            bform("(x0 + x1)^2*x0"),
            bform("(x0 + x1)^2*x1"),
            4,
        ),
        MonoidalKind::QuarticVII => (
            a22,
            bform("(x0 + x1)*x0^2"),
            bform("(x0 + x1)*x1^2"),
            4,
        ),
    };
    MonoidalSurface::validate(a, b, c, d)
}

/// Extract the monoidal data of `f` along the line cut out by two
/// independent linear forms: move the line to V(x0, x1), check multiplicity
/// d-1, and read off (A, B, C).
pub fn monoidal_from_polynomial(
    f: &MultiPoly,
    line: (&MultiPoly, &MultiPoly),
) -> Result<MonoidalSurface, MonoidalError> {
    let d = f
        .homogeneous_degree()
        .ok_or(MonoidalError::NotHomogeneous)?;
    if d < 3 {
        return Err(MonoidalError::DegreeTooSmall(d));
    }
    let g = crate::submonoidal::standardize_line(f, line)
        .map_err(|_| MonoidalError::BadLine)?;
    let bv = binary_vars();
    let mut parts = vec![MultiPoly::zero(&bv); 3];
    for (e, c) in g.terms() {
        let slot = match (e.0[2], e.0[3]) {
            (0, 0) => 0,
            (1, 0) => 1,
            (0, 1) => 2,
            _ => return Err(MonoidalError::MultiplicityTooLow { needed: d - 1 }),
        };
        let m = MultiPoly::monomial(&bv, Expo(vec![e.0[0], e.0[1]]), c.clone());
        parts[slot] = parts[slot].add(&m);
    }
    MonoidalSurface::validate(parts[0].clone(), parts[1].clone(), parts[2].clone(), d)
}

/// One identity check in the degree bookkeeping of a web of monoidal maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WebCheck {
    pub name: &'static str,
    pub lhs: i64,
    pub rhs: i64,
    pub pass: bool,
}

/// Degree bookkeeping for a monoidal Cremona transformation of degree d whose
/// base curve meets a general line alpha times and whose residual scheme
/// contributes beta.
#[derive(Debug, Clone)]
pub struct WebReport {
    pub d: u32,
    pub alpha: u32,
    pub beta: u32,
    /// Degree of the inverse transformation: 2d - 1 - alpha.
    pub d_prime: i64,
    pub checks: Vec<WebCheck>,
}

impl WebReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub fn monoidal_web_invariants(d: u32, alpha: u32, beta: u32) -> WebReport {
    let (di, ai, bi) = (i64::from(d), i64::from(alpha), i64::from(beta));
    let d_prime = 2 * di - 1 - ai;
    let mut checks = Vec::new();
    let mut push = |name: &'static str, lhs: i64, rhs: i64| {
        checks.push(WebCheck {
            name,
            lhs,
            rhs,
            pass: lhs == rhs,
        });
    };
    push("2*alpha + beta = 3*(d - 1)", 2 * ai + bi, 3 * (di - 1));
    push(
        "2*beta + alpha = 3*(d' - 1)",
        2 * bi + ai,
        3 * (d_prime - 1),
    );
    push("beta = 2*d' - d - 1", bi, 2 * d_prime - di - 1);
    push(
        "jacobian balance: 4*(d - 1) = (d - 1) + 2*alpha + beta",
        4 * (di - 1),
        (di - 1) + 2 * ai + bi,
    );
    WebReport {
        d,
        alpha,
        beta,
        d_prime,
        checks,
    }
}

/// For two general monoidal surfaces of degree d through the same line:
/// (degree of the residual intersection curve, number of its intersection
/// points with the line) = (2d - 1, 2d - 2).
pub fn pair_intersection_profile(d: u32) -> (u32, u32) {
    assert!(d >= 2);
    (2 * d - 1, 2 * d - 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuliFamily {
    Monoidal,
    Submonoidal,
}

/// Dimension of the moduli space: 3d - 11 for monoidal surfaces (d >= 4),
/// 6d - 14 for submonoidal surfaces (d >= 3).
pub fn moduli_dimension(family: ModuliFamily, d: u32) -> Result<i64, MonoidalError> {
    let di = i64::from(d);
    match family {
        ModuliFamily::Monoidal => {
            if d < 4 {
                return Err(MonoidalError::ModuliRange {
                    family: "monoidal",
                    d,
                    min: 4,
                });
            }
            Ok(3 * di - 11)
        }
        ModuliFamily::Submonoidal => {
            if d < 3 {
                return Err(MonoidalError::ModuliRange {
                    family: "submonoidal",
                    d,
                    min: 3,
                });
            }
            Ok(6 * di - 14)
        }
    }
}

/// The coordinate swap (x0,x1,x2,x3) -> (x1,x0,x3,x2) fixing every canonical
/// surface's defining polynomial.
pub fn canonical_symmetry(f: &MultiPoly) -> MultiPoly {
    let i = |n| FieldElement::from_int(n);
    let m = vec![
        vec![i(0), i(1), i(0), i(0)],
        vec![i(1), i(0), i(0), i(0)],
        vec![i(0), i(0), i(0), i(1)],
        vec![i(0), i(0), i(1), i(0)],
    ];
    linear_substitution(f, &m)
}
