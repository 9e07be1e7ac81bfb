//! Integer lattice bookkeeping for the blow-up model of a submonoidal
//! surface of degree d: the rank-(3d-2) lattice with diagonal form
//! (1, -1, ..., -1) over the geometric basis (e_0, ..., e_{3d-3}), the
//! distinguished classes, the special-section census, duality for even
//! degree, and the associated lattice involution.

use std::collections::BTreeSet;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("degree must be at least 3, got {0}")]
    DegreeTooSmall(u32),
    #[error("classes over different degrees: {0} vs {1}")]
    RankMismatch(u32, u32),
    #[error("degree must be even, got {0}")]
    OddDegree(u32),
    #[error("index set must consist of 2n indices in 1..=3d-4")]
    BadIndexSet,
    #[error("class census with explicit classes limited to 3d-4 <= {max}, got d = {d}")]
    EnumerationTooLarge { d: u32, max: u32 },
}

/// Integer class over the geometric basis (e_0, ..., e_{3d-3}).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeClass {
    d: u32,
    coeffs: Vec<i64>,
}

impl LatticeClass {
    pub fn rank_for(d: u32) -> usize {
        3 * d as usize - 2
    }

    pub fn new(d: u32, coeffs: Vec<i64>) -> Result<Self, LatticeError> {
        if d < 3 {
            return Err(LatticeError::DegreeTooSmall(d));
        }
        assert_eq!(coeffs.len(), Self::rank_for(d), "coefficient length");
        Ok(LatticeClass { d, coeffs })
    }

    pub fn zero(d: u32) -> Self {
        LatticeClass {
            d,
            coeffs: vec![0; Self::rank_for(d)],
        }
    }

    /// The basis vector e_i.
    pub fn basis(d: u32, i: usize) -> Self {
        let mut c = Self::zero(d);
        c.coeffs[i] = 1;
        c
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn add(&self, other: &LatticeClass) -> LatticeClass {
        assert_eq!(self.d, other.d);
        LatticeClass {
            d: self.d,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &LatticeClass) -> LatticeClass {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> LatticeClass {
        LatticeClass {
            d: self.d,
            coeffs: self.coeffs.iter().map(|a| a * k).collect(),
        }
    }
}

/// The diagonal intersection form: e_0^2 = 1, e_i^2 = -1 for i >= 1.
pub fn intersection_number(a: &LatticeClass, b: &LatticeClass) -> Result<i64, LatticeError> {
    if a.d != b.d {
        return Err(LatticeError::RankMismatch(a.d, b.d));
    }
    let mut s = a.coeffs[0] * b.coeffs[0];
    for (x, y) in a.coeffs.iter().zip(&b.coeffs).skip(1) {
        s -= x * y;
    }
    Ok(s)
}

/// The distinguished classes: hyperplane section H, the trace curve class,
/// the canonical class, and the conic-fiber class.
#[derive(Debug, Clone)]
pub struct StandardClasses {
    /// H = d*e_0 - sum e_i - (d-2)*e_last.
    pub h: LatticeClass,
    /// (d-1)*e_0 - sum e_i - (d-3)*e_last.
    pub sigma: LatticeClass,
    /// K = -3*e_0 + sum e_i + e_last.
    pub k: LatticeClass,
    /// e_0 - e_last.
    pub fiber: LatticeClass,
}

pub fn standard_classes(d: u32) -> Result<StandardClasses, LatticeError> {
    if d < 3 {
        return Err(LatticeError::DegreeTooSmall(d));
    }
    let rank = LatticeClass::rank_for(d);
    let last = rank - 1;
    let di = i64::from(d);
    let mk = |e0: i64, mid: i64, elast: i64| {
        let mut c = vec![mid; rank];
        c[0] = e0;
        c[last] = elast;
        LatticeClass { d, coeffs: c }
    };
    Ok(StandardClasses {
        h: mk(di, -1, -(di - 2)),
        sigma: mk(di - 1, -1, -(di - 3)),
        k: mk(-3, 1, 1),
        fiber: {
            let mut c = vec![0; rank];
            c[0] = 1;
            c[last] = -1;
            LatticeClass { d, coeffs: c }
        },
    })
}

/// A section class n*e_0 - sum_{i in I} e_i - (n-1)*e_last with #I = 2n
/// (n = 0 with empty I encodes the exceptional class e_last).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialSectionClass {
    pub n: u32,
    pub index_set: BTreeSet<usize>,
    pub class: LatticeClass,
}

impl SpecialSectionClass {
    pub fn new(d: u32, n: u32, index_set: BTreeSet<usize>) -> Result<Self, LatticeError> {
        let rank = LatticeClass::rank_for(d);
        let last = rank - 1;
        if index_set.len() != 2 * n as usize
            || index_set.iter().any(|&i| i < 1 || i > rank - 2)
        {
            return Err(LatticeError::BadIndexSet);
        }
        let mut coeffs = vec![0i64; rank];
        coeffs[0] = i64::from(n);
        for &i in &index_set {
            coeffs[i] = -1;
        }
        coeffs[last] += -(i64::from(n) - 1);
        let class = LatticeClass::new(d, coeffs)?;
        Ok(SpecialSectionClass {
            n,
            index_set,
            class,
        })
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}

#[derive(Debug, Clone)]
pub struct SectionGroup {
    pub n: u32,
    pub count: u128,
    /// Explicit classes, present when requested and feasible.
    pub classes: Option<Vec<SpecialSectionClass>>,
}

#[derive(Debug, Clone)]
pub struct SpecialSectionCensus {
    pub d: u32,
    pub groups: Vec<SectionGroup>,
    /// Sum over n >= 1 of C(3d-4, 2n); equals 2^(3d-5) - 1, and 2^(3d-5)
    /// counting the n = 0 companion class e_last.
    pub total_with_exceptional: u128,
}

/// Census of section classes by degree n. With `with_classes`, every class
/// is materialized (guarded to 3d-4 <= 16 index positions).
pub fn enumerate_special_sections(
    d: u32,
    with_classes: bool,
) -> Result<SpecialSectionCensus, LatticeError> {
    if d < 3 {
        return Err(LatticeError::DegreeTooSmall(d));
    }
    let slots = 3 * d as usize - 4;
    if with_classes && slots > 16 {
        return Err(LatticeError::EnumerationTooLarge { d, max: 16 });
    }
    let mut groups = Vec::new();
    let mut total: u128 = 1; // the n = 0 class e_last
    for n in 1..=(slots / 2) as u32 {
        let count = binomial(slots as u64, 2 * u64::from(n));
        total += count;
        let classes = with_classes.then(|| {
            crate::exactalg::subsets(slots, 2 * n as usize)
                .into_iter()
                .map(|idx| {
                    let set: BTreeSet<usize> = idx.into_iter().map(|i| i + 1).collect();
                    SpecialSectionClass::new(d, n, set).unwrap()
                })
                .collect()
        });
        groups.push(SectionGroup { n, count, classes });
    }
    Ok(SpecialSectionCensus {
        d,
        groups,
        total_with_exceptional: total,
    })
}

/// For even degree d = 2m: the residual section cut out together with E by a
/// monoidal surface of degree m-1, computed as (m-1)H - (m-2)Sigma - E.
/// Parameters come out as n' = 3m-2-n with the complementary index set.
pub fn dual_section(
    s: &SpecialSectionClass,
) -> Result<SpecialSectionClass, LatticeError> {
    let d = s.class.degree();
    if d % 2 != 0 {
        return Err(LatticeError::OddDegree(d));
    }
    let m = i64::from(d / 2);
    let std = standard_classes(d)?;
    let dual_class = std
        .h
        .scale(m - 1)
        .sub(&std.sigma.scale(m - 2))
        .sub(&s.class);
    // Decode (n', I') and cross-check against the direct construction.
    let n_prime = u32::try_from(dual_class.coeffs[0]).expect("nonnegative degree");
    let rank = LatticeClass::rank_for(d);
    let index_set: BTreeSet<usize> = (1..rank - 1)
        .filter(|&i| dual_class.coeffs[i] == -1)
        .collect();
    let rebuilt = SpecialSectionClass::new(d, n_prime, index_set)?;
    assert_eq!(rebuilt.class, dual_class, "dual class decoding");
    Ok(rebuilt)
}

/// The lattice involution attached to the plane model of an even-degree
/// surface: e_0 -> (3m-1)e_0 - sum e_i - (3m-2)e_last,
/// e_i -> e_0 - e_i - e_last, e_last -> (3m-2)e_0 - sum e_i - (3m-3)e_last.
pub fn tau_action(a: &LatticeClass) -> Result<LatticeClass, LatticeError> {
    let d = a.degree();
    if d % 2 != 0 {
        return Err(LatticeError::OddDegree(d));
    }
    let m = i64::from(d / 2);
    let rank = LatticeClass::rank_for(d);
    let last = rank - 1;
    let mut out = vec![0i64; rank];
    let add = |target: &mut Vec<i64>, image: &[(usize, i64)], weight: i64| {
        for &(i, v) in image {
            target[i] += v * weight;
        }
    };
    for (i, &w) in a.coeffs.iter().enumerate() {
        if w == 0 {
            continue;
        }
        if i == 0 {
            let mut img: Vec<(usize, i64)> = vec![(0, 3 * m - 1), (last, -(3 * m - 2))];
            img.extend((1..last).map(|j| (j, -1)));
            add(&mut out, &img, w);
        } else if i == last {
            let mut img: Vec<(usize, i64)> = vec![(0, 3 * m - 2), (last, -(3 * m - 3))];
            img.extend((1..last).map(|j| (j, -1)));
            add(&mut out, &img, w);
        } else {
            add(&mut out, &[(0, 1), (i, -1), (last, -1)], w);
        }
    }
    LatticeClass::new(d, out)
}
