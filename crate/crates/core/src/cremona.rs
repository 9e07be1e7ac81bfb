//! Cremona transformations of P^3 attached to a submonoidal surface: the
//! satellite curve traced by the poles of the distinguished line in the
//! residual conics, the space involution restricting to the reflection in
//! the line on each residual plane, and the companion involution fixing the
//! surface pointwise.

use crate::exactalg::{gcd_many, null_space, FieldElement, MultiPoly};
use crate::monoidal::{ambient_vars, binary_vars, parameter_vars};
use crate::submonoidal::SubmonoidalSurface;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

#[derive(Debug, thiserror::Error)]
pub enum CremonaError {
    #[error("conic bundle is degenerate: D*F - E^2 vanishes identically")]
    DegenerateConicBundle,
    #[error("conic bundle discriminant vanishes identically")]
    DegenerateDiscriminant,
    #[error("surface is not carried to itself: division left a remainder")]
    NotInvariant { witness: MultiPoly },
    #[error("could not find enough sample points off the exceptional locus")]
    SamplingExhausted,
    #[error("point conditions leave no surface of degree {d}")]
    OverConstrained { d: u32 },
}

/// A rational self-map of projective space, given by homogeneous components
/// of a common degree over a shared variable list.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalMap {
    comps: Vec<MultiPoly>,
}

impl RationalMap {
    pub fn new(comps: Vec<MultiPoly>) -> Self {
        assert!(!comps.is_empty());
        let vs = comps[0].vars().clone();
        assert!(comps.iter().all(|c| *c.vars() == vs), "mixed variable lists");
        assert_eq!(comps.len(), vs.len(), "component count vs ambient dimension");
        RationalMap { comps }
    }

    pub fn components(&self) -> &[MultiPoly] {
        &self.comps
    }

    /// Cancels the common factor of the components; returns the reduced map
    /// and the (monic) cancelled factor.
    pub fn reduce(&self) -> (RationalMap, MultiPoly) {
        let g = gcd_many(self.comps.iter().filter(|c| !c.is_zero()));
        if g.is_constant() {
            return (self.clone(), g);
        }
        let comps = self.comps.iter().map(|c| c.divide_exact(&g)).collect();
        (RationalMap { comps }, g)
    }

    /// self o inner.
    pub fn compose(&self, inner: &RationalMap) -> RationalMap {
        let comps = self
            .comps
            .iter()
            .map(|c| c.substitute(inner.components()))
            .collect();
        RationalMap { comps }
    }

    pub fn apply(&self, point: &[FieldElement]) -> Vec<FieldElement> {
        self.comps.iter().map(|c| c.eval(point)).collect()
    }
}

/// True when u and v are proportional nonzero vectors (equal projective
/// points).
pub fn proportional_points(u: &[FieldElement], v: &[FieldElement]) -> bool {
    assert_eq!(u.len(), v.len());
    if u.iter().all(|x| x.is_zero()) || v.iter().all(|x| x.is_zero()) {
        return false;
    }
    for i in 0..u.len() {
        for j in (i + 1)..u.len() {
            if &u[i] * &v[j] != &u[j] * &v[i] {
                return false;
            }
        }
    }
    true
}

/// The signed maximal minors (Delta_1, Delta_2, Delta_3) of the 2x3 matrix
/// [[B, D, E], [C, E, F]]: the pole of the line in the residual conic has
/// plane coordinates [Delta_1, Delta_2, Delta_3]. Delta_1 = D*F - E^2 is
/// the negative of the small discriminant.
pub fn pole_minors(s: &SubmonoidalSurface) -> [MultiPoly; 3] {
    let [_, b, c, dd, e, f] = s.forms();
    let d1 = dd.mul(f).sub(&e.pow(2));
    let d2 = c.mul(e).sub(&b.mul(f));
    let d3 = b.mul(e).sub(&c.mul(dd));
    [d1, d2, d3]
}

/// Parameterization of the satellite curve: the closure of the poles of the
/// line with respect to the residual conics.
#[derive(Debug, Clone)]
pub struct SatelliteCurve {
    /// [t0*Delta_1, t1*Delta_1, Delta_2, Delta_3] in (t0, t1).
    pub raw: [MultiPoly; 4],
    /// The raw components divided by their common factor.
    pub reduced: [MultiPoly; 4],
    /// The cancelled (monic) common factor.
    pub cancelled: MultiPoly,
    /// Common degree of the reduced components.
    pub degree: u32,
    /// Degree 2d-3 attained for a general surface.
    pub expected_degree: u32,
}

impl SatelliteCurve {
    /// The point of the curve over [t0, t1], or None at a base point of the
    /// reduced parameterization.
    pub fn evaluate(&self, t: &[FieldElement; 2]) -> Option<Vec<FieldElement>> {
        let p: Vec<FieldElement> = self.reduced.iter().map(|c| c.eval(t)).collect();
        if p.iter().all(|x| x.is_zero()) {
            None
        } else {
            Some(p)
        }
    }
}

pub fn satellite_curve(s: &SubmonoidalSurface) -> Result<SatelliteCurve, CremonaError> {
    let [d1, d2, d3] = pole_minors(s);
    if d1.is_zero() {
        return Err(CremonaError::DegenerateConicBundle);
    }
    let tv = parameter_vars();
    let d1 = d1.rename_vars(&tv);
    let d2 = d2.rename_vars(&tv);
    let d3 = d3.rename_vars(&tv);
    let t0 = MultiPoly::var(&tv, 0);
    let t1 = MultiPoly::var(&tv, 1);
    let raw = [t0.mul(&d1), t1.mul(&d1), d2, d3];
    let g = gcd_many(raw.iter().filter(|c| !c.is_zero()));
    let reduced: [MultiPoly; 4] = std::array::from_fn(|i| raw[i].divide_exact(&g));
    let degree = reduced
        .iter()
        .find_map(|c| c.homogeneous_degree())
        .expect("nonzero component");
    Ok(SatelliteCurve {
        raw,
        reduced,
        cancelled: g,
        degree,
        expected_degree: 2 * s.degree() - 3,
    })
}

/// The reflection involution of P^3: restricted to each plane through the
/// line, it is the de Jonquieres involution reflecting the residual conic in
/// the line. Components have degree 2d-3; the satellite curve is fixed
/// pointwise.
pub fn theta(s: &SubmonoidalSurface) -> Result<RationalMap, CremonaError> {
    let [d1, d2, d3] = pole_minors(s);
    if d1.is_zero() {
        return Err(CremonaError::DegenerateConicBundle);
    }
    let av = ambient_vars();
    let d1 = d1.embed(&av);
    let d2 = d2.embed(&av);
    let d3 = d3.embed(&av);
    let x: Vec<MultiPoly> = (0..4).map(|i| MultiPoly::var(&av, i)).collect();
    let two = FieldElement::from_int(2);
    Ok(RationalMap::new(vec![
        x[0].mul(&d1).neg(),
        x[1].mul(&d1).neg(),
        x[2].mul(&d1).sub(&d2.scale(&two)),
        x[3].mul(&d1).sub(&d3.scale(&two)),
    ]))
}

/// The companion involution fixing the surface pointwise: on each line
/// through the pole inside a residual plane, it is the harmonic conjugation
/// with respect to the two intersection points with the residual conic.
/// Components have degree 3d-3.
pub fn theta_prime(s: &SubmonoidalSurface) -> Result<RationalMap, CremonaError> {
    let p = s.discriminant_p();
    if p.is_zero() {
        return Err(CremonaError::DegenerateDiscriminant);
    }
    let [d1, d2, d3] = pole_minors(s);
    if d1.is_zero() {
        return Err(CremonaError::DegenerateConicBundle);
    }
    let av = ambient_vars();
    let fd = s.defining_polynomial();
    let p = p.embed(&av);
    let d1 = d1.embed(&av);
    let d2 = d2.embed(&av);
    let d3 = d3.embed(&av);
    let x: Vec<MultiPoly> = (0..4).map(|i| MultiPoly::var(&av, i)).collect();
    let head = fd.mul(&d1).sub(&p);
    Ok(RationalMap::new(vec![
        x[0].mul(&head),
        x[1].mul(&head),
        fd.mul(&d2).sub(&p.mul(&x[2])),
        fd.mul(&d3).sub(&p.mul(&x[3])),
    ]))
}

/// Checks F o map = Q * F exactly; returns the cofactor Q.
pub fn verify_surface_invariance(
    s: &SubmonoidalSurface,
    map: &RationalMap,
) -> Result<MultiPoly, CremonaError> {
    let fd = s.defining_polynomial();
    let pulled = fd.substitute(map.components());
    pulled
        .try_divide(&fd)
        .ok_or(CremonaError::NotInvariant { witness: pulled })
}

/// Symbolic involution check: the components of map o map are proportional
/// to the coordinate functions (all cross products vanish identically).
pub fn verify_involution_symbolic(map: &RationalMap) -> bool {
    let sq = map.compose(map);
    let vs = sq.components()[0].vars().clone();
    let n = sq.components().len();
    for i in 0..n {
        for j in (i + 1)..n {
            let xi = MultiPoly::var(&vs, i);
            let xj = MultiPoly::var(&vs, j);
            if !sq.components()[i].mul(&xj).sub(&sq.components()[j].mul(&xi)).is_zero() {
                return false;
            }
        }
    }
    true
}

fn random_point(rng: &mut impl Rng, n: usize) -> Vec<FieldElement> {
    loop {
        let p: Vec<FieldElement> = (0..n)
            .map(|_| FieldElement::from_int(rng.gen_range(-9..=9)))
            .collect();
        if p.iter().any(|x| !x.is_zero()) {
            return p;
        }
    }
}

/// Sampled involution check: applies the map twice at `points` random
/// rational points away from the indeterminacy locus and verifies the result
/// equals the starting point projectively. Returns the number verified.
pub fn verify_involution_sampled(
    map: &RationalMap,
    points: u32,
    seed: u64,
) -> Result<u32, CremonaError> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let n = map.components().len();
    let mut verified = 0;
    let mut attempts = 0u32;
    while verified < points {
        attempts += 1;
        if attempts > 200 * points {
            return Err(CremonaError::SamplingExhausted);
        }
        let p = random_point(&mut rng, n);
        let q = map.apply(&p);
        if q.iter().all(|x| x.is_zero()) {
            continue;
        }
        let r = map.apply(&q);
        if r.iter().all(|x| x.is_zero()) {
            continue;
        }
        if !proportional_points(&p, &r) {
            return Err(CremonaError::NotInvariant {
                witness: MultiPoly::zero(map.components()[0].vars()),
            });
        }
        verified += 1;
    }
    Ok(verified)
}

/// Sampled commutation check for two self-maps: f(g(p)) and g(f(p)) agree
/// projectively at `points` random points. Returns the number verified.
pub fn verify_commuting_sampled(
    f: &RationalMap,
    g: &RationalMap,
    points: u32,
    seed: u64,
) -> Result<u32, CremonaError> {
    assert_eq!(f.components().len(), g.components().len());
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let n = f.components().len();
    let mut verified = 0;
    let mut attempts = 0u32;
    while verified < points {
        attempts += 1;
        if attempts > 200 * points {
            return Err(CremonaError::SamplingExhausted);
        }
        let p = random_point(&mut rng, n);
        let fp = f.apply(&p);
        let gp = g.apply(&p);
        if fp.iter().all(|x| x.is_zero()) || gp.iter().all(|x| x.is_zero()) {
            continue;
        }
        let fg = f.apply(&gp);
        let gf = g.apply(&fp);
        if fg.iter().all(|x| x.is_zero()) || gf.iter().all(|x| x.is_zero()) {
            continue;
        }
        if !proportional_points(&fg, &gf) {
            return Err(CremonaError::SamplingExhausted);
        }
        verified += 1;
    }
    Ok(verified)
}

/// Random surface of degree d with small integer coefficients, optionally
/// through the given points of P^3 (a linear condition on the 6d-2
/// coefficients, solved exactly). Resamples until the discriminants attain
/// their generic degrees 3d-4 and 2d-4.
pub fn sample_surface(
    d: u32,
    through: &[Vec<FieldElement>],
    seed: u64,
) -> Result<SubmonoidalSurface, CremonaError> {
    let degs = [d, d - 1, d - 1, d - 2, d - 2, d - 2];
    let total: usize = degs.iter().map(|&k| k as usize + 1).sum();
    let two = FieldElement::from_int(2);
    let basis = if through.is_empty() {
        None
    } else {
        let rows: Vec<Vec<FieldElement>> = through
            .iter()
            .map(|p| {
                assert_eq!(p.len(), 4);
                let fiber = [
                    FieldElement::one(),
                    &two * &p[2],
                    &two * &p[3],
                    &p[2] * &p[2],
                    &(&two * &p[2]) * &p[3],
                    &p[3] * &p[3],
                ];
                let mut row = Vec::with_capacity(total);
                for (fi, &k) in degs.iter().enumerate() {
                    for j in 0..=k {
                        row.push(&(&p[0].pow(k - j) * &p[1].pow(j)) * &fiber[fi]);
                    }
                }
                row
            })
            .collect();
        let ns = null_space(&rows, total);
        if ns.is_empty() {
            return Err(CremonaError::OverConstrained { d });
        }
        Some(ns)
    };
    let bv = binary_vars();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    for _ in 0..200 {
        let coeffs: Vec<FieldElement> = match &basis {
            None => (0..total)
                .map(|_| FieldElement::from_int(rng.gen_range(-5..=5)))
                .collect(),
            Some(ns) => {
                let mut acc = vec![FieldElement::zero(); total];
                for vec in ns {
                    let w = FieldElement::from_int(rng.gen_range(-5..=5));
                    for (a, v) in acc.iter_mut().zip(vec) {
                        *a = &*a + &(&w * v);
                    }
                }
                acc
            }
        };
        let mut forms = Vec::with_capacity(6);
        let mut pos = 0usize;
        for &k in &degs {
            let mut f = MultiPoly::zero(&bv);
            for j in 0..=k {
                let mono = MultiPoly::monomial(
                    &bv,
                    crate::exactalg::Expo(vec![k - j, j]),
                    coeffs[pos].clone(),
                );
                f = f.add(&mono);
                pos += 1;
            }
            forms.push(f);
        }
        let [a, b, c, dd, e, f]: [MultiPoly; 6] = forms.try_into().unwrap();
        let Ok(surface) = SubmonoidalSurface::new(a, b, c, dd, e, f, d) else {
            continue;
        };
        if surface.discriminant_p().homogeneous_degree() != Some(3 * d - 4) {
            continue;
        }
        if surface.small_discriminant_r().homogeneous_degree() != Some(2 * d - 4) {
            continue;
        }
        return Ok(surface);
    }
    Err(CremonaError::SamplingExhausted)
}
