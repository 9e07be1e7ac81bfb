//! Submonoidal surfaces: degree-d surfaces in P^3 containing the line
//! Gamma = V(x0, x1) with multiplicity d-2, written as
//!
//! ```text
//! A + 2*B*x2 + 2*C*x3 + D*x2^2 + 2*E*x2*x3 + F*x3^2
//! ```
//!
//! with A, B, C, D, E, F binary forms in (x0, x1) of degrees d, d-1, d-1,
//! d-2, d-2, d-2. Planes through the line cut residual conics; this module
//! computes the conic-bundle discriminants, classifies singular fibers,
//! decides the non-degeneracy conditions, and packages the nodal quartic with
//! the (8_4) node/trope configuration over Q(sqrt(-3)).

use crate::exactalg::{
    gcd_many, invert_field, linear_substitution, minor_gcd_locus, poly_parse, resultant,
    squarefree_decompose_binary, vars, Expo, FieldCtx, FieldElement, MultiPoly,
    SquarefreeDecomposition, VarSet,
};
use crate::monoidal::{ambient_vars, binary_vars};

#[derive(Debug, thiserror::Error)]
pub enum SubmonoidalError {
    #[error("degree must be at least 3, got {0}")]
    DegreeTooSmall(u32),
    #[error("form {form} must be homogeneous of degree {expected} (or zero), found degree {found:?}")]
    DegreeMismatch {
        form: &'static str,
        expected: u32,
        found: Option<u32>,
    },
    #[error("the three quadratic-part forms are all zero: the line has multiplicity d-1 (monoidal or worse)")]
    QuadraticPartZero,
    #[error("input is not homogeneous of a single degree")]
    NotHomogeneous,
    #[error("line forms are not two independent linear forms")]
    BadLine,
    #[error("line multiplicity below d-2: monomial {monomial} has degree {found} < {needed} along the line")]
    MultiplicityTooLow {
        monomial: String,
        found: u32,
        needed: u32,
    },
    #[error("discriminant is identically zero: every residual conic is singular")]
    DiscriminantZero,
    #[error("small discriminant is identically zero")]
    SmallDiscriminantZero,
    #[error("pinch divisor needs degree at least 4, got {0}")]
    PinchDegree(u32),
}

/// A validated submonoidal surface, held as its six binary forms.
#[derive(Debug, Clone)]
pub struct SubmonoidalSurface {
    d: u32,
    a: MultiPoly,
    b: MultiPoly,
    c: MultiPoly,
    dd: MultiPoly,
    e: MultiPoly,
    f: MultiPoly,
}

fn check_degree(
    f: &MultiPoly,
    expected: u32,
    name: &'static str,
) -> Result<(), SubmonoidalError> {
    if f.is_zero() {
        return Ok(());
    }
    if f.homogeneous_degree() != Some(expected) {
        return Err(SubmonoidalError::DegreeMismatch {
            form: name,
            expected,
            found: f.homogeneous_degree(),
        });
    }
    Ok(())
}

impl SubmonoidalSurface {
    pub fn new(
        a: MultiPoly,
        b: MultiPoly,
        c: MultiPoly,
        dd: MultiPoly,
        e: MultiPoly,
        f: MultiPoly,
        d: u32,
    ) -> Result<Self, SubmonoidalError> {
        if d < 3 {
            return Err(SubmonoidalError::DegreeTooSmall(d));
        }
        check_degree(&a, d, "A")?;
        check_degree(&b, d - 1, "B")?;
        check_degree(&c, d - 1, "C")?;
        check_degree(&dd, d - 2, "D")?;
        check_degree(&e, d - 2, "E")?;
        check_degree(&f, d - 2, "F")?;
        if dd.is_zero() && e.is_zero() && f.is_zero() {
            return Err(SubmonoidalError::QuadraticPartZero);
        }
        Ok(SubmonoidalSurface {
            d,
            a,
            b,
            c,
            dd,
            e,
            f,
        })
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    /// The six forms (A, B, C, D, E, F) in (x0, x1).
    pub fn forms(&self) -> [&MultiPoly; 6] {
        [&self.a, &self.b, &self.c, &self.dd, &self.e, &self.f]
    }

    /// A + 2Bx2 + 2Cx3 + Dx2^2 + 2Ex2x3 + Fx3^2 in (x0..x3).
    pub fn defining_polynomial(&self) -> MultiPoly {
        let av = ambient_vars();
        let x2 = MultiPoly::var(&av, 2);
        let x3 = MultiPoly::var(&av, 3);
        let two = FieldElement::from_int(2);
        self.a
            .embed(&av)
            .add(&self.b.embed(&av).mul(&x2).scale(&two))
            .add(&self.c.embed(&av).mul(&x3).scale(&two))
            .add(&self.dd.embed(&av).mul(&x2.pow(2)))
            .add(&self.e.embed(&av).mul(&x2).mul(&x3).scale(&two))
            .add(&self.f.embed(&av).mul(&x3.pow(2)))
    }

    /// The symmetric matrix [[A,B,C],[B,D,E],[C,E,F]] of the residual conic
    /// in fiber coordinates.
    pub fn conic_matrix(&self) -> Vec<Vec<MultiPoly>> {
        vec![
            vec![self.a.clone(), self.b.clone(), self.c.clone()],
            vec![self.b.clone(), self.dd.clone(), self.e.clone()],
            vec![self.c.clone(), self.e.clone(), self.f.clone()],
        ]
    }

    /// The 2x3 matrix [[B,D,E],[C,E,F]] whose rank drop detects conics
    /// singular on the line.
    pub fn delta_matrix(&self) -> Vec<Vec<MultiPoly>> {
        vec![
            vec![self.b.clone(), self.dd.clone(), self.e.clone()],
            vec![self.c.clone(), self.e.clone(), self.f.clone()],
        ]
    }

    /// Discriminant of the conic bundle: the 3x3 determinant, a binary form
    /// of degree 3d-4 (or zero) whose roots parameterize singular conics.
    pub fn discriminant_p(&self) -> MultiPoly {
        crate::exactalg::det_poly(&self.conic_matrix())
    }

    /// E^2 - D*F, degree 2(d-2): roots parameterize conics meeting the line
    /// at a single point.
    pub fn small_discriminant_r(&self) -> MultiPoly {
        self.e.pow(2).sub(&self.dd.mul(&self.f))
    }

    /// Singular-fiber census. Needs a nonzero discriminant.
    pub fn classify_fibers(&self) -> Result<FiberReport, SubmonoidalError> {
        let p = self.discriminant_p();
        if p.is_zero() {
            return Err(SubmonoidalError::DiscriminantZero);
        }
        let bv = binary_vars();
        let dec = squarefree_decompose_binary(&p);
        let s1 = dec.multiplicity_part(&bv, 1).total_degree().unwrap_or(0);
        let p2 = dec.multiplicity_part(&bv, 2);
        // Among the double roots, the double-line fibers are exactly those
        // where the full conic matrix drops to rank 1.
        let rank1 = minor_gcd_locus(&self.conic_matrix(), &p2, 1);
        let s3 = rank1.total_degree().unwrap_or(0);
        let s2 = p2.total_degree().unwrap_or(0) - s3;
        let max_multiplicity = dec.max_multiplicity();
        let rdp_note = (max_multiplicity >= 3).then(|| {
            format!(
                "discriminant has a factor of multiplicity {max_multiplicity}: \
                 non-normal or worse (higher rational double points along the stratum)"
            )
        });
        Ok(FiberReport {
            p,
            decomposition: dec,
            s1,
            s2,
            s3,
            node_count: s2 + 2 * s3,
            max_multiplicity,
            rdp_note,
        })
    }

    /// The non-degeneracy verdict: discriminant nonzero with no factor of
    /// multiplicity >= 3, and small discriminant nonzero squarefree. The
    /// absence of singular lines meeting Gamma is not decided and reported as
    /// an unchecked hypothesis.
    pub fn check_nondegenerate(&self) -> NondegeneracyVerdict {
        let mut failures = Vec::new();
        let p = self.discriminant_p();
        if p.is_zero() {
            failures.push("discriminant P is identically zero".to_string());
        } else {
            let dec = squarefree_decompose_binary(&p);
            let m = dec.max_multiplicity();
            if m >= 3 {
                failures.push(format!(
                    "discriminant P has a root of multiplicity {m} > 2"
                ));
            }
        }
        let r = self.small_discriminant_r();
        if r.is_zero() {
            failures.push("small discriminant R is identically zero".to_string());
        } else if !crate::exactalg::is_squarefree_binary(&r) {
            failures.push("small discriminant R has a multiple root".to_string());
        }
        NondegeneracyVerdict {
            pass: failures.is_empty(),
            failures,
            unchecked_hypothesis:
                "no singular line of the surface meets the distinguished line: not checked",
        }
    }

    /// Parameters of residual conics whose singular point lies on the line:
    /// gcd of the squarefree part of R with the minors B*E - C*D and
    /// B*F - C*E.
    pub fn eckardt_locus(&self) -> Result<MultiPoly, SubmonoidalError> {
        let r = self.small_discriminant_r();
        if r.is_zero() {
            return Err(SubmonoidalError::SmallDiscriminantZero);
        }
        let bv = binary_vars();
        let radical = squarefree_decompose_binary(&r).radical(&bv);
        let m1 = self.b.mul(&self.e).sub(&self.c.mul(&self.dd));
        let m2 = self.b.mul(&self.f).sub(&self.c.mul(&self.e));
        Ok(gcd_many([&radical, &m1, &m2].into_iter()))
    }

    /// Branch divisor on the line of the double cover traced by the
    /// (x0,x1)-trace curve: the discriminant, with respect to the pencil
    /// parameter, of G = D(t)y1^2 + 2E(t)y1y2 + F(t)y2^2. A binary form of
    /// degree 4(d-3) in (y1, y2).
    pub fn pinch_divisor(&self) -> Result<PinchDivisor, SubmonoidalError> {
        if self.d < 4 {
            return Err(SubmonoidalError::PinchDegree(self.d));
        }
        let tv = vars(&["t0", "t1", "y1", "y2"]);
        let shared = gcd_many([&self.dd, &self.e, &self.f].into_iter().filter(|p| !p.is_zero()));
        let shared_factor = (!shared.is_constant()).then(|| shared.clone());
        let reduce = |p: &MultiPoly| -> MultiPoly {
            let q = if shared_factor.is_some() {
                p.divide_exact(&shared)
            } else {
                p.clone()
            };
            q.rename_vars(&binary_t01()).embed(&tv)
        };
        let y1 = MultiPoly::var(&tv, 2);
        let y2 = MultiPoly::var(&tv, 3);
        let g = reduce(&self.dd)
            .mul(&y1.pow(2))
            .add(&reduce(&self.e).mul(&y1).mul(&y2).scale(&FieldElement::from_int(2)))
            .add(&reduce(&self.f).mul(&y2.pow(2)));
        if g.degree_in(0).unwrap_or(0) == 0 {
            // After removing the shared factor the pencil parameter is gone:
            // no branching.
            return Ok(PinchDivisor {
                divisor: MultiPoly::one(&yvars()),
                shared_factor,
            });
        }
        let res = resultant(&g, &g.derivative(0), 0);
        // Res_{t0}(G, dG/dt0) = lc_{t0}(G) * t1^k * divisor(y1, y2): divide
        // off the leading coefficient, then the monomial content in t1.
        let lc = g.coeffs_in(0).pop().expect("nonzero polynomial");
        let reduced = res.divide_exact(&lc);
        let mono = reduced.monomial_content();
        let pure = reduced.divide_monomial(&mono);
        // Re-express in (y1, y2) only.
        let yv = yvars();
        let mut out = MultiPoly::zero(&yv);
        for (e, c) in pure.terms() {
            assert_eq!(e.0[0] + e.0[1], 0, "pinch divisor still involves the parameter");
            out = out.add(&MultiPoly::monomial(
                &yv,
                Expo(vec![e.0[2], e.0[3]]),
                c.clone(),
            ));
        }
        Ok(PinchDivisor {
            divisor: out,
            shared_factor,
        })
    }
}

fn binary_t01() -> VarSet {
    vars(&["t0", "t1"])
}

fn yvars() -> VarSet {
    vars(&["y1", "y2"])
}

#[derive(Debug, Clone)]
pub struct FiberReport {
    /// The 3x3 discriminant, degree 3d-4.
    pub p: MultiPoly,
    pub decomposition: SquarefreeDecomposition,
    /// Degree of the simple part of P: plain singular conics (line pairs with
    /// node off the line).
    pub s1: u32,
    /// Degree of the double part with conic rank 2: line pairs counted twice.
    pub s2: u32,
    /// Degree of the double part with conic rank 1: double lines (two nodes
    /// each).
    pub s3: u32,
    /// s2 + 2*s3 ordinary nodes of the surface.
    pub node_count: u32,
    pub max_multiplicity: u32,
    /// Present when some factor has multiplicity >= 3.
    pub rdp_note: Option<String>,
}

impl FiberReport {
    /// The census identity s1 + 2*s2 + 2*s3 = 3d-4, valid when no factor has
    /// multiplicity above 2.
    pub fn census_sum(&self) -> u32 {
        self.s1 + 2 * self.s2 + 2 * self.s3
    }
}

#[derive(Debug, Clone)]
pub struct NondegeneracyVerdict {
    pub pass: bool,
    pub failures: Vec<String>,
    /// Hypothesis of the normality criterion that is not algorithmically
    /// decided here.
    pub unchecked_hypothesis: &'static str,
}

#[derive(Debug, Clone)]
pub struct PinchDivisor {
    /// Binary form in (y1, y2) of degree 4(d-3) minus contributions of the
    /// shared factor.
    pub divisor: MultiPoly,
    /// Common factor of D, E, F (fiber components of the trace curve), if
    /// any; the divisor is computed on the cofactors.
    pub shared_factor: Option<MultiPoly>,
}

/// Substitute coordinates moving the line cut out by the two linear forms to
/// V(x0, x1): returns g with g(u) = f(x) under u = N x, N starting with the
/// two line forms as rows.
pub fn standardize_line(
    f: &MultiPoly,
    line: (&MultiPoly, &MultiPoly),
) -> Result<MultiPoly, SubmonoidalError> {
    // Rows of N: the two line forms, completed to an invertible matrix by
    // standard basis vectors; then u = N x are coordinates in which the line
    // is V(u0, u1).
    let lin_coeffs = |l: &MultiPoly| -> Result<Vec<FieldElement>, SubmonoidalError> {
        if l.homogeneous_degree() != Some(1) {
            return Err(SubmonoidalError::BadLine);
        }
        let mut row = vec![FieldElement::zero(); 4];
        for (e, c) in l.terms() {
            let i = e.0.iter().position(|&k| k == 1).unwrap();
            row[i] = c.clone();
        }
        Ok(row)
    };
    let r0 = lin_coeffs(line.0)?;
    let r1 = lin_coeffs(line.1)?;
    let mut n = vec![r0, r1];
    for i in 0..4 {
        let mut unit = vec![FieldElement::zero(); 4];
        unit[i] = FieldElement::one();
        let mut cand = n.clone();
        cand.push(unit);
        if cand.len() <= 4 && row_rank(&cand) == cand.len() {
            n = cand;
        }
        if n.len() == 4 {
            break;
        }
    }
    if n.len() != 4 || crate::exactalg::det_field(&n).is_zero() {
        return Err(SubmonoidalError::BadLine);
    }
    let n_inv = invert_field(&n).expect("invertible by construction");
    Ok(linear_substitution(f, &n_inv))
}

/// Extract the submonoidal data of `f` along the line cut out by two
/// independent linear forms: move the line to V(x0, x1), check multiplicity
/// d-2, and read off the six binary forms.
pub fn submonoidal_from_polynomial(
    f: &MultiPoly,
    line: (&MultiPoly, &MultiPoly),
) -> Result<SubmonoidalSurface, SubmonoidalError> {
    let av = f.vars().clone();
    assert_eq!(av.len(), 4, "expected a polynomial in four variables");
    let d = f
        .homogeneous_degree()
        .ok_or(SubmonoidalError::NotHomogeneous)?;
    if d < 3 {
        return Err(SubmonoidalError::DegreeTooSmall(d));
    }
    let g = standardize_line(f, line)?;
    // Multiplicity check: every monomial needs (x0, x1)-degree >= d-2.
    let needed = d - 2;
    for (e, _) in g.terms() {
        let line_deg = e.0[0] + e.0[1];
        if line_deg < needed {
            let mono: Vec<String> = e
                .0
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        av[i].clone()
                    } else {
                        format!("{}^{}", av[i], k)
                    }
                })
                .collect();
            return Err(SubmonoidalError::MultiplicityTooLow {
                monomial: mono.join("*"),
                found: line_deg,
                needed,
            });
        }
    }
    // Read off the coefficients of 1, x2, x3, x2^2, x2*x3, x3^2.
    let bv = binary_vars();
    let mut parts = vec![MultiPoly::zero(&bv); 6];
    for (e, c) in g.terms() {
        let slot = match (e.0[2], e.0[3]) {
            (0, 0) => 0,
            (1, 0) => 1,
            (0, 1) => 2,
            (2, 0) => 3,
            (1, 1) => 4,
            (0, 2) => 5,
            _ => unreachable!("multiplicity check passed"),
        };
        let m = MultiPoly::monomial(&bv, Expo(vec![e.0[0], e.0[1]]), c.clone());
        parts[slot] = parts[slot].add(&m);
    }
    let half = FieldElement::ratio(1, 2);
    SubmonoidalSurface::new(
        parts[0].clone(),
        parts[1].scale(&half),
        parts[2].scale(&half),
        parts[3].clone(),
        parts[4].scale(&half),
        parts[5].clone(),
        d,
    )
}

fn row_rank(rows: &[Vec<FieldElement>]) -> usize {
    let mut a: Vec<Vec<FieldElement>> = rows.to_vec();
    let cols = a[0].len();
    let mut rank = 0;
    for col in 0..cols {
        if rank == a.len() {
            break;
        }
        let piv = (rank..a.len()).find(|&r| !a[r][col].is_zero());
        let piv = match piv {
            Some(p) => p,
            None => continue,
        };
        a.swap(rank, piv);
        let inv = a[rank][col].inv().unwrap();
        for j in 0..cols {
            a[rank][j] = &a[rank][j] * &inv;
        }
        for r in 0..a.len() {
            if r != rank && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..cols {
                    let t = &f * &a[rank][j];
                    a[r][j] = &a[r][j] - &t;
                }
            }
        }
        rank += 1;
    }
    rank
}

// ---------------------------------------------------------------------------
// The nodal quartic from a quadratic line complex, over Q(sqrt(-3)).

/// Exact incidence of points against hyperplanes.
#[derive(Debug, Clone)]
pub struct IncidenceReport {
    pub matrix: Vec<Vec<bool>>,
    pub row_sums: Vec<usize>,
    pub col_sums: Vec<usize>,
}

pub fn verify_incidence(
    points: &[[FieldElement; 4]],
    hyperplanes: &[MultiPoly],
) -> IncidenceReport {
    let matrix: Vec<Vec<bool>> = points
        .iter()
        .map(|p| {
            assert!(
                p.iter().any(|c| !c.is_zero()),
                "zero vector is not a projective point"
            );
            hyperplanes
                .iter()
                .map(|h| h.eval(p).is_zero())
                .collect()
        })
        .collect();
    let row_sums = matrix.iter().map(|r| r.iter().filter(|&&b| b).count()).collect();
    let col_sums = (0..hyperplanes.len())
        .map(|j| matrix.iter().filter(|r| r[j]).count())
        .collect();
    IncidenceReport {
        matrix,
        row_sums,
        col_sums,
    }
}

/// The quartic with a double line arising from a quadratic line complex:
/// determinant of a symmetric 4x4 matrix of linear forms, with its 8 nodes,
/// 8 tropes, and 4 torsal planes, everything exact over Q(sqrt(-3)).
#[derive(Debug, Clone)]
pub struct PlueckerPackage {
    /// The symmetric 4x4 matrix of linear forms.
    pub matrix: Vec<Vec<MultiPoly>>,
    /// Its determinant: the quartic, in the original coordinates.
    pub quartic: MultiPoly,
    /// The double line, V(x0 - x1, x2), in the original coordinates.
    pub double_line: (MultiPoly, MultiPoly),
    /// Substitution matrix M with standard_quartic(x) = quartic(M x): sends
    /// the double line to V(x0, x1).
    pub to_standard: Vec<Vec<FieldElement>>,
    pub standard_quartic: MultiPoly,
    /// Extraction of the standard-position quartic along V(x0, x1).
    pub surface: SubmonoidalSurface,
    /// The eight nodes, original coordinates.
    pub nodes: Vec<[FieldElement; 4]>,
    /// The eight tropes (planes cutting double conics), original coordinates.
    pub tropes: Vec<MultiPoly>,
    /// The four planes containing the torsal lines: V(x0 - x1 + t*x2) for
    /// t in {(1+w)/2, (1-w)/2, 1} and V(x2) for t = infinity.
    pub torsal_planes: Vec<MultiPoly>,
}

/// Parse a polynomial in the ambient variables over Q(sqrt(-3)).
fn kx(src: &str) -> MultiPoly {
    poly_parse(src, &ambient_vars(), &FieldCtx::Quadratic(-3)).expect("builtin form")
}

pub fn pluecker_surface() -> PlueckerPackage {
    let av = ambient_vars();
    let m = vec![
        vec![kx("0"), kx("x0 - x1 + x2"), kx("x0 - x1 + x3"), kx("x0")],
        vec![kx("x0 - x1 + x2"), kx("0"), kx("x3"), kx("x1")],
        vec![kx("x0 - x1 + x3"), kx("x3"), kx("0"), kx("x2")],
        vec![kx("x0"), kx("x1"), kx("x2"), kx("0")],
    ];
    let quartic = crate::exactalg::det_poly(&m);
    // x0 -> x0 + x2, x1 -> x2, x2 -> x1, x3 -> x3 turns the double line
    // V(x0 - x1, x2) into V(x0, x1).
    let i = |n| FieldElement::from_int(n);
    let to_standard = vec![
        vec![i(1), i(0), i(1), i(0)],
        vec![i(0), i(0), i(1), i(0)],
        vec![i(0), i(1), i(0), i(0)],
        vec![i(0), i(0), i(0), i(1)],
    ];
    let standard_quartic = linear_substitution(&quartic, &to_standard);
    let surface = submonoidal_from_polynomial(
        &standard_quartic,
        (&MultiPoly::var(&av, 0), &MultiPoly::var(&av, 1)),
    )
    .expect("standard-position quartic extracts");
    let e = FieldElement::quadratic(
        num::BigRational::new(1.into(), 2.into()),
        num::BigRational::new(1.into(), 2.into()),
        -3,
    );
    let eb = e.conj();
    let pt = |v: [&FieldElement; 4]| -> [FieldElement; 4] {
        [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()]
    };
    let one = FieldElement::one();
    let zero = FieldElement::zero();
    let neg_one = FieldElement::from_int(-1);
    // Nodes in pairs (P_i, P_i'): each torsal plane contains one pair.
    let nodes = vec![
        pt([&zero, &e, &one, &zero]),
        pt([&neg_one, &zero, &eb, &one]),
        pt([&zero, &eb, &one, &zero]),
        pt([&neg_one, &zero, &e, &one]),
        pt([&zero, &one, &one, &one]),
        pt([&one, &zero, &neg_one, &zero]),
        pt([&one, &zero, &zero, &zero]),
        pt([&zero, &one, &zero, &one]),
    ];
    let tropes = vec![
        kx("x0"),
        kx("x1"),
        kx("x3"),
        kx("x0 - x1 + x3"),
        kx("(1/2 + 1/2*w)*x2 + (1/2 - 1/2*w)*x3 - x1"),
        kx("(1/2 - 1/2*w)*x2 + (1/2 + 1/2*w)*x3 - x1"),
        kx("(1/2 + 1/2*w)*(x0 + x2) - x1 + x3"),
        kx("(1/2 - 1/2*w)*(x0 + x2) - x1 + x3"),
    ];
    let torsal_planes = vec![
        kx("x0 - x1 + (1/2 + 1/2*w)*x2"),
        kx("x0 - x1 + (1/2 - 1/2*w)*x2"),
        kx("x0 - x1 + x2"),
        kx("x2"),
    ];
    PlueckerPackage {
        matrix: m,
        quartic,
        double_line: (kx("x0 - x1"), kx("x2")),
        to_standard,
        standard_quartic,
        surface,
        nodes,
        tropes,
        torsal_planes,
    }
}
