//! Linearized polynomials, their splittings `R = R1 + R2`, and the curve
//! families built from them.
//!
//! For an `F_p`-subspace `L` of `F_q` with annihilator `R = sum a_i x^(p^i)`,
//! a splitting moves the low part of `R` into `R2` and keeps the rest in `R1`.
//! On `L` minus the common zeros of `R1` and `R2` the function `-R1/R2` equals 1,
//! so every such point carries a full fiber of the cover `y^(q-1) = -R1/R2`.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use crate::arith;
use crate::divisors::RatFun;
use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::kummer::{KummerCurve, Prediction};
use crate::upoly::Poly;

/// `sum coeffs[i] * x^(p^i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinPoly {
    coeffs: Vec<Fe>,
}

impl LinPoly {
    pub fn new(mut coeffs: Vec<Fe>) -> LinPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        LinPoly { coeffs }
    }

    /// `x^q - x`.
    pub fn full_space(field: &Field) -> LinPoly {
        let mut coeffs = vec![Fe::ZERO; field.m() as usize + 1];
        coeffs[0] = field.from_int(-1);
        coeffs[field.m() as usize] = Fe::ONE;
        LinPoly::new(coeffs)
    }

    /// `sum_{i < m} x^(p^i)`, the absolute trace.
    pub fn trace(field: &Field) -> LinPoly {
        LinPoly::new(vec![Fe::ONE; field.m() as usize])
    }

    /// Reads a dense polynomial whose support consists of p-power exponents.
    pub fn from_poly(poly: &Poly, field: &Field) -> Option<LinPoly> {
        let p = field.p() as usize;
        let mut coeffs = Vec::new();
        let mut next = 1usize;
        for (e, &c) in poly.coeffs().iter().enumerate() {
            if e == next {
                coeffs.push(c);
                next *= p;
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(LinPoly::new(coeffs))
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `r` with degree `p^r`.
    pub fn rank(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest index with a nonzero coefficient.
    pub fn low(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn to_poly(&self, field: &Field) -> Poly {
        let p = field.p() as usize;
        let terms: Vec<(usize, Fe)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| (p.pow(i as u32), c))
            .collect();
        if terms.is_empty() {
            return Poly::zero();
        }
        Poly::from_terms(&terms, field)
    }

    /// Evaluation through Frobenius powers.
    pub fn evaluate(&self, x: Fe, field: &Field) -> Fe {
        let mut acc = Fe::ZERO;
        let mut xp = x;
        for &c in &self.coeffs {
            acc = field.add(acc, field.mul(c, xp));
            xp = field.frobenius(xp, 1);
        }
        acc
    }

    pub fn scale(&self, c: Fe, field: &Field) -> LinPoly {
        LinPoly::new(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    pub fn sub(&self, other: &LinPoly, field: &Field) -> LinPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        LinPoly::new(
            (0..n)
                .map(|i| field.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    /// `self(x)^p`.
    fn pth_power(&self, field: &Field) -> LinPoly {
        let mut coeffs = vec![Fe::ZERO];
        coeffs.extend(self.coeffs.iter().map(|&c| field.frobenius(c, 1)));
        LinPoly::new(coeffs)
    }

    /// `M` with `M^(p^k) = self`, defined when the support starts at index k or later.
    pub fn root_of_power(&self, k: usize, field: &Field) -> Option<LinPoly> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        let m = field.m() as usize;
        let back = ((m - k % m) % m) as u32;
        Some(LinPoly::new(
            self.coeffs
                .iter()
                .skip(k)
                .map(|&c| field.frobenius(c, back))
                .collect(),
        ))
    }

    fn monic(&self, field: &Field) -> Result<LinPoly> {
        let lead = *self.coeffs.last().ok_or(Error::ZeroPolynomial)?;
        Ok(self.scale(field.inv(lead)?, field))
    }
}

/// An `F_p`-subspace of `F_q` with its elements listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: Vec<Fe>,
    elements: Vec<Fe>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Rank over GF(p) of the coordinate vectors.
fn coordinate_rank(vectors: &[Fe], field: &Field) -> usize {
    let p = field.p() as u64;
    let mut rows: Vec<Vec<u64>> = vectors
        .iter()
        .map(|&v| field.coords(v).into_iter().map(u64::from).collect())
        .collect();
    let cols = field.m() as usize;
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][col], p);
        for v in rows[rank].iter_mut() {
            *v = *v * inv % p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let factor = row[col];
                for (v, &w) in row.iter_mut().zip(&pivot_row) {
                    *v = (*v + (p - factor) * w) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

impl Subspace {
    pub fn new(basis: Vec<Fe>, field: &Field) -> Result<Subspace> {
        if coordinate_rank(&basis, field) != basis.len() {
            return Err(Error::DependentBasis);
        }
        let mut elements = vec![Fe::ZERO];
        for &b in &basis {
            let mut next = Vec::with_capacity(elements.len() * field.p() as usize);
            for lambda in 0..field.p() {
                let scaled = field.mul(field.from_int(lambda as i64), b);
                next.extend(elements.iter().map(|&e| field.add(e, scaled)));
            }
            elements = next;
        }
        elements.sort();
        Ok(Subspace { basis, elements })
    }

    /// `F_q` itself, spanned by the polynomial basis.
    pub fn full(field: &Field) -> Subspace {
        let basis = (0..field.m())
            .map(|i| {
                field
                    .element((field.p() as u64).pow(i))
                    .expect("basis vector")
            })
            .collect();
        Subspace::new(basis, field).expect("polynomial basis is independent")
    }

    /// The kernel of the absolute trace, with the encoding-greedy basis.
    pub fn trace_zero(field: &Field) -> Subspace {
        let mut basis = Vec::new();
        for a in field.units() {
            if basis.len() + 1 == field.m() as usize {
                break;
            }
            if field.trace_to_prime(a) != 0 {
                continue;
            }
            basis.push(a);
            if coordinate_rank(&basis, field) != basis.len() {
                basis.pop();
            }
        }
        Subspace::new(basis, field).expect("greedy basis is independent")
    }

    pub fn basis(&self) -> &[Fe] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn elements(&self) -> &[Fe] {
        &self.elements
    }

    pub fn contains(&self, a: Fe) -> bool {
        self.elements.binary_search(&a).is_ok()
    }
}

/// `prod_{c in L} (x - c)`, built one basis vector at a time via
/// `R'(x) = R(x)^p - R(b)^(p-1) R(x)`.
pub fn annihilator(space: &Subspace, field: &Field) -> Result<LinPoly> {
    let mut r = LinPoly::new(vec![Fe::ONE]);
    for &b in space.basis() {
        let v = r.evaluate(b, field);
        if v.is_zero() {
            return Err(Error::DependentBasis);
        }
        let beta = field.pow(v, field.p() as u64 - 1);
        r = r.pth_power(field).sub(&r.scale(beta, field), field);
    }
    Ok(r)
}

/// A splitting `R = R1 + R2` with `R1` supported on `[s, r]` and `R2` on `[0, t]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingSpec {
    pub r_poly: LinPoly,
    pub r1: LinPoly,
    pub r2: LinPoly,
    /// `R1 = m1^(p^s)`; separable, with zero set `L1`.
    pub m1: LinPoly,
    pub r: usize,
    pub s: usize,
    pub t: usize,
    /// `#(L1 ∩ L2)`.
    pub delta: u64,
    pub c_s: Fe,
}

/// Splits `R` at index `s`: `R2` takes `a_i` for `i < s` plus `c_s` at `s`.
pub fn make_splitting(r_poly: &LinPoly, s: usize, c_s: Fe, field: &Field) -> Result<SplittingSpec> {
    let r = r_poly.rank().ok_or(Error::InvalidSplit("R is zero"))?;
    if r_poly.coeff(0).is_zero() {
        return Err(Error::InvalidSplit("R is not separable"));
    }
    if r < 2 {
        return Err(Error::InvalidSplit("R must have rank at least 2"));
    }
    if s == 0 || s >= r {
        return Err(Error::InvalidSplit("s must satisfy 0 < s < r"));
    }
    let mut low = r_poly.coeffs()[..s].to_vec();
    low.push(c_s);
    let r2 = LinPoly::new(low);
    let r1 = r_poly.sub(&r2, field);
    if r1.coeff(s).is_zero() {
        return Err(Error::InvalidSplit("b_s = 0"));
    }
    let t = r2.rank().ok_or(Error::InvalidSplit("R2 is empty"))?;
    if r2.coeff(0).is_zero() {
        return Err(Error::InvalidSplit("c_0 = 0"));
    }
    if t > s {
        return Err(Error::InvalidSplit("t > s"));
    }
    let m1 = r1
        .root_of_power(s, field)
        .ok_or(Error::InvalidSplit("R1 has support below s"))?;
    if m1.rank() == r2.rank() && m1.monic(field)? == r2.monic(field)? {
        return Err(Error::InvalidSplit("L1 = L2"));
    }
    let common = m1.to_poly(field).gcd(&r2.to_poly(field), field)?;
    let delta = common.degree().unwrap_or(0) as u64;
    Ok(SplittingSpec {
        r_poly: r_poly.clone(),
        r1,
        r2,
        m1,
        r,
        s,
        t,
        delta,
        c_s,
    })
}

impl SplittingSpec {
    /// `-R1 / R2`.
    pub fn function(&self, field: &Field) -> Result<RatFun> {
        RatFun::new(
            self.r1.to_poly(field).neg(field),
            self.r2.to_poly(field),
            field,
        )
    }
}

/// The cover `y^(q-1) = -R1/R2`.
pub fn splitting_curve(spec: &SplittingSpec, field: &Arc<Field>) -> Result<KummerCurve> {
    KummerCurve::new(field.clone(), field.q() as u64 - 1, spec.function(field)?)
}

/// Closed-form genus and point lower bound for a splitting curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitPrediction {
    pub genus: i64,
    pub point_lower_bound: u64,
}

pub fn prop13_prediction(spec: &SplittingSpec, field: &Field) -> SplitPrediction {
    let p = field.p() as i64;
    let m = field.m() as u64;
    let q = field.q() as i64;
    let (r, s, t) = (spec.r as u32, spec.s as u32, spec.t as u32);
    let delta = spec.delta as i64;
    let gs = arith::gcd(m, s as u64) as u32;
    let grt = arith::gcd(m, (r - t) as u64) as u32;
    let twice = (p.pow(r - s) + p.pow(t) - delta - 1) * (q - 2) - delta * p.pow(gs) - p.pow(grt)
        + 2 * delta
        + 2;
    SplitPrediction {
        genus: twice / 2,
        point_lower_bound: ((p.pow(r) - delta) * (q - 1)) as u64,
    }
}

/// Result of enumerating the splittings of one linearized polynomial.
#[derive(Clone, Debug, Default)]
pub struct SplittingEnumeration {
    pub specs: Vec<SplittingSpec>,
    pub skipped: BTreeMap<&'static str, usize>,
}

/// Every valid splitting, in order of increasing `s`, then increasing `c_s`.
pub fn enumerate_splittings(r_poly: &LinPoly, field: &Field) -> SplittingEnumeration {
    let mut out = SplittingEnumeration::default();
    let Some(r) = r_poly.rank() else {
        return out;
    };
    let mut seen = HashSet::new();
    for s in 1..r {
        for c_s in field.elements() {
            match make_splitting(r_poly, s, c_s, field) {
                Ok(spec) => {
                    if seen.insert((spec.r1.clone(), spec.r2.clone())) {
                        out.specs.push(spec);
                    } else {
                        *out.skipped.entry("duplicate").or_default() += 1;
                    }
                }
                Err(Error::InvalidSplit(reason)) => *out.skipped.entry(reason).or_default() += 1,
                Err(_) => *out.skipped.entry("other").or_default() += 1,
            }
        }
    }
    out
}

/// Named curve families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Prop21,
    Prop23,
    Prop25,
    Prop31,
    Prop35,
    Xfp,
    Quotient,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::Prop21 => "prop2.1",
            Family::Prop23 => "prop2.3",
            Family::Prop25 => "prop2.5",
            Family::Prop31 => "prop3.1",
            Family::Prop35 => "prop3.5",
            Family::Xfp => "xfp",
            Family::Quotient => "quotient",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Family> {
        [
            Family::Prop21,
            Family::Prop23,
            Family::Prop25,
            Family::Prop31,
            Family::Prop35,
            Family::Xfp,
            Family::Quotient,
        ]
        .into_iter()
        .find(|f| f.tag() == tag)
    }
}

/// A generated curve with its closed-form prediction, if one is known.
#[derive(Clone, Debug)]
pub struct FamilyCurve {
    pub family: Family,
    pub curve: KummerCurve,
    pub predicted: Option<Prediction>,
    pub splitting: Option<SplittingSpec>,
    /// The constant `a` the family was instantiated with.
    pub a: Option<Fe>,
}

fn hypothesis(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::HypothesisViolated(what.to_string()))
    }
}

fn ipow(p: u32, e: u32) -> u64 {
    (p as u64).pow(e)
}

fn full_space_family(field: &Arc<Field>, a: Fe, power_class: bool) -> Result<FamilyCurve> {
    let (p, m) = (field.p(), field.m());
    hypothesis(m % 2 == 1 && m >= 3, "m must be odd and at least 3")?;
    hypothesis(!a.is_zero(), "a must be nonzero")?;
    let s = (m - 1) / 2;
    let d = ipow(p, s) - 1;
    let is_power = field.is_dth_power(a, d)?;
    if power_class {
        hypothesis(is_power, "a must be a (p^((m-1)/2) - 1)-th power")?;
    } else {
        hypothesis(!is_power, "a must not be a (p^((m-1)/2) - 1)-th power")?;
    }
    let spec = make_splitting(&LinPoly::full_space(field), s as usize, a, field)?;
    let curve = splitting_curve(&spec, field)?;
    let q = field.q() as u64;
    let (hi, lo) = (ipow(p, m.div_ceil(2)), ipow(p, s));
    let pp = p as u64;
    let predicted = if power_class {
        let genus = ((hi + lo - pp - 1) * (q - 2) + pp + 2 - pp * pp) / 2;
        let extra = if p == 2 { 3 } else { 0 };
        Prediction {
            genus,
            points: (q - 1) * (q - pp) + extra,
        }
    } else {
        let genus = ((hi + lo - 2) * (q - 2) + 4 - 2 * pp) / 2;
        let minus_a = field.neg(a);
        let extra = if field.is_dth_power(minus_a, pp - 1)? {
            2 * (pp - 1)
        } else {
            0
        };
        Prediction {
            genus,
            points: (q - 1) * (q - 1) + extra,
        }
    };
    Ok(FamilyCurve {
        family: if power_class {
            Family::Prop21
        } else {
            Family::Prop23
        },
        curve,
        predicted: Some(predicted),
        splitting: Some(spec),
        a: Some(a),
    })
}

/// `y^(q-1) = -(x^q - a x^(p^s)) / (a x^(p^s) - x)` with `s = (m-1)/2`, m odd,
/// `a` a `(p^s - 1)`-th power.
pub fn family_2_1(field: &Arc<Field>, a: Fe) -> Result<FamilyCurve> {
    full_space_family(field, a, true)
}

/// The same shape with `a` outside the `(p^s - 1)`-th powers.
pub fn family_2_3(field: &Arc<Field>, a: Fe) -> Result<FamilyCurve> {
    full_space_family(field, a, false)
}

/// Default constant for [`family_2_5`]: the first `a` outside `(F_q^*)^(sqrt(q)-1)`.
pub fn default_a_2_5(field: &Field) -> Option<Fe> {
    let sq = field.sqrt_q()?;
    field
        .units()
        .find(|&a| !field.is_dth_power(a, sq - 1).unwrap_or(true))
}

/// `y^(q-1) = -(x^q - a x^sqrt(q)) / (a x^sqrt(q) - x)` for m even.
pub fn family_2_5(field: &Arc<Field>, a: Option<Fe>) -> Result<FamilyCurve> {
    let m = field.m();
    hypothesis(m.is_multiple_of(2), "m must be even")?;
    let sq = field.sqrt_q().expect("m is even");
    let a = match a {
        Some(a) => a,
        None => default_a_2_5(field).ok_or_else(|| {
            Error::HypothesisViolated("no a outside the (sqrt(q)-1)-th powers".into())
        })?,
    };
    hypothesis(!a.is_zero(), "a must be nonzero")?;
    hypothesis(
        !field.is_dth_power(a, sq - 1)?,
        "a must not be a (sqrt(q) - 1)-th power",
    )?;
    let spec = make_splitting(&LinPoly::full_space(field), (m / 2) as usize, a, field)?;
    let curve = splitting_curve(&spec, field)?;
    let q = field.q() as u64;
    Ok(FamilyCurve {
        family: Family::Prop25,
        curve,
        predicted: Some(Prediction {
            genus: (sq - 1) * (q - 2) + 2 - sq,
            points: (q - 1) * (q - 1),
        }),
        splitting: Some(spec),
        a: Some(a),
    })
}

/// Trace-zero splitting at `s`:
/// `y^(q-1) = -(x^(p^(m-1-s)) + ... + x)^(p^s) / (x^(p^(s-1)) + ... + x)`
/// with `gcd(m, s) = 1`.
pub fn family_3_1(field: &Arc<Field>, s: u32) -> Result<FamilyCurve> {
    let (p, m) = (field.p(), field.m());
    hypothesis(m >= 3, "m must be at least 3")?;
    hypothesis(s > 0 && s < m - 1, "s must satisfy 0 < s < m - 1")?;
    hypothesis(arith::gcd(m as u64, s as u64) == 1, "gcd(m, s) must be 1")?;
    let spec = make_splitting(&LinPoly::trace(field), s as usize, Fe::ZERO, field)?;
    let curve = splitting_curve(&spec, field)?;
    let q = field.q() as u64;
    let pp = p as u64;
    let genus = ((ipow(p, m - 1 - s) + ipow(p, s - 1) - 2) * (q - 2) + 4 - 2 * pp) / 2;
    let divides = (s as u64 * (m - s) as u64).is_multiple_of(pp);
    let pm_odd = (pp * m as u64) % 2 == 1;
    let k = match (pm_odd, divides) {
        (true, false) => 0,
        (true, true) => 1,
        (false, false) => 2,
        (false, true) => 3,
    };
    Ok(FamilyCurve {
        family: Family::Prop31,
        curve,
        predicted: Some(Prediction {
            genus,
            points: (ipow(p, m - 1) - 1) * (q - 1) + k * (pp - 1),
        }),
        splitting: Some(spec),
        a: None,
    })
}

/// First nonzero `a` (by encoding) with `a^sqrt(q) + a = 0`.
pub fn default_a_3_5(field: &Field) -> Option<Fe> {
    let sq = field.sqrt_q()?;
    field
        .units()
        .find(|&a| field.add(field.pow(a, sq), a).is_zero())
}

/// `y^(sqrt(q)+1) = a (x^(p^(m/2-1)) + ... + x)` with `a^sqrt(q) + a = 0`.
/// These curves attain the Hasse-Weil bound.
pub fn family_3_5(field: &Arc<Field>) -> Result<FamilyCurve> {
    let (p, m) = (field.p(), field.m());
    hypothesis(m % 2 == 0, "m must be even")?;
    let sq = field.sqrt_q().expect("m is even");
    let a = default_a_3_5(field)
        .ok_or_else(|| Error::HypothesisViolated("no a with a^sqrt(q) + a = 0".into()))?;
    let r2 = LinPoly::new(vec![Fe::ONE; (m / 2) as usize]);
    let f = RatFun::polynomial(r2.to_poly(field).scale(a, field))?;
    let curve = KummerCurve::new(field.clone(), sq + 1, f)?;
    let q = field.q() as u64;
    let pp = p as u64;
    Ok(FamilyCurve {
        family: Family::Prop35,
        curve,
        predicted: Some(Prediction {
            genus: (q - pp * sq) / (2 * pp),
            points: q * sq / pp + 1,
        }),
        splitting: None,
        a: Some(a),
    })
}

/// `y^(q-1) = x f(x)^p`.
pub fn variant_4_1(field: &Arc<Field>, f: &Poly) -> Result<FamilyCurve> {
    hypothesis(!f.is_zero(), "f must be nonzero")?;
    let num = Poly::x().mul(&f.pow(field.p() as u64, field), field);
    let curve = KummerCurve::new(
        field.clone(),
        field.q() as u64 - 1,
        RatFun::polynomial(num)?,
    )?;
    Ok(FamilyCurve {
        family: Family::Xfp,
        curve,
        predicted: None,
        splitting: None,
        a: None,
    })
}

/// `y^s = g(x)` where `f(x) = g(x^t)`, from a cover `y^n = f(x)` with `s | n`
/// and `t | p - 1`.
pub fn quotient(curve: &KummerCurve, s: u64, t: u64) -> Result<FamilyCurve> {
    let field = curve.field();
    hypothesis(
        s >= 2 && curve.n().is_multiple_of(s),
        "s must be a divisor >= 2 of n",
    )?;
    hypothesis(
        t >= 1 && (field.p() as u64 - 1).is_multiple_of(t),
        "t must divide p - 1",
    )?;
    let g = if t == 1 {
        curve.f().clone()
    } else {
        curve
            .f()
            .contract_power(t as usize)
            .ok_or(Error::NotAQuotient(t))?
    };
    let g = RatFun::new(g.num().clone(), g.den().clone(), field)?;
    Ok(FamilyCurve {
        family: Family::Quotient,
        curve: KummerCurve::new(field.clone(), s, g)?,
        predicted: None,
        splitting: None,
        a: None,
    })
}
