//! Dense univariate polynomials over a [`Field`].
//!
//! Coefficients are stored in ascending order without trailing zeros; the zero
//! polynomial is the empty vector. Every operation takes the field explicitly.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gf::{Fe, Field};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<Fe>,
}

/// `unit * prod(g_i ^ e_i)` with monic, squarefree, pairwise coprime `g_i`,
/// sorted by increasing multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqfDecomp {
    pub unit: Fe,
    pub parts: Vec<(Poly, u64)>,
}

impl SqfDecomp {
    pub fn reconstruct(&self, field: &Field) -> Poly {
        self.parts
            .iter()
            .fold(Poly::constant(self.unit), |acc, (g, e)| {
                acc.mul(&g.pow(*e, field), field)
            })
    }

    /// Number of distinct roots over the algebraic closure.
    pub fn distinct_roots(&self) -> usize {
        self.parts
            .iter()
            .map(|(g, _)| g.degree().unwrap_or(0))
            .sum()
    }
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Fe::ONE)
    }

    pub fn x() -> Poly {
        Poly::monomial(Fe::ONE, 1)
    }

    pub fn constant(c: Fe) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: Fe, degree: usize) -> Poly {
        let mut coeffs = vec![Fe::ZERO; degree + 1];
        coeffs[degree] = c;
        Poly::from_coeffs(coeffs)
    }

    /// `x - x0`.
    pub fn linear(x0: Fe, field: &Field) -> Poly {
        Poly::from_coeffs(vec![field.neg(x0), Fe::ONE])
    }

    /// Takes ascending coefficients; trailing zeros are dropped.
    pub fn from_coeffs(mut coeffs: Vec<Fe>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Ascending coefficients given as canonical element encodings.
    pub fn from_encodings(encs: &[u64], field: &Field) -> Result<Poly> {
        let coeffs = encs
            .iter()
            .map(|&e| field.element(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }

    /// Sparse construction from `(exponent, coefficient)` terms; repeated
    /// exponents are summed.
    pub fn from_terms(terms: &[(usize, Fe)], field: &Field) -> Poly {
        let deg = terms.iter().map(|t| t.0).max().unwrap_or(0);
        let mut coeffs = vec![Fe::ZERO; deg + 1];
        for &(e, c) in terms {
            coeffs[e] = field.add(coeffs[e], c);
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn encodings(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.enc()).collect()
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Fe> {
        self.coeffs.last().copied()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Fe::ONE
    }

    pub fn add(&self, other: &Poly, field: &Field) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| field.add(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn neg(&self, field: &Field) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&c| field.neg(c)).collect())
    }

    pub fn sub(&self, other: &Poly, field: &Field) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| field.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: Fe, field: &Field) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly, field: &Field) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = field.add(out[i + j], field.mul(a, b));
                }
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn pow(&self, mut e: u64, field: &Field) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, field);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, field);
            }
        }
        acc
    }

    /// Quotient and remainder with `self = q * divisor + r`, `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Poly, field: &Field) -> Result<(Poly, Poly)> {
        let dlen = divisor.coeffs.len();
        if dlen == 0 {
            return Err(Error::DivisionByZero);
        }
        if self.coeffs.len() < dlen {
            return Ok((Poly::zero(), self.clone()));
        }
        let lead_inv = field.inv(divisor.coeffs[dlen - 1])?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Fe::ZERO; rem.len() - dlen + 1];
        for k in (0..quot.len()).rev() {
            let top = rem[k + dlen - 1];
            // the leading slot is dropped outright, even if the ring is not a field
            rem[k + dlen - 1] = Fe::ZERO;
            if top.is_zero() {
                continue;
            }
            let c = field.mul(top, lead_inv);
            quot[k] = c;
            for (j, &d) in divisor.coeffs[..dlen - 1].iter().enumerate() {
                if !d.is_zero() {
                    rem[k + j] = field.sub(rem[k + j], field.mul(c, d));
                }
            }
        }
        rem.truncate(dlen - 1);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, divisor: &Poly, field: &Field) -> Result<Poly> {
        Ok(self.divrem(divisor, field)?.1)
    }

    /// Exact division; a nonzero remainder is an internal error.
    pub fn div_exact(&self, divisor: &Poly, field: &Field) -> Result<Poly> {
        let (q, r) = self.divrem(divisor, field)?;
        if !r.is_zero() {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn monic(&self, field: &Field) -> Result<Poly> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?;
        if lead == Fe::ONE {
            return Ok(self.clone());
        }
        Ok(self.scale(field.inv(lead)?, field))
    }

    /// Monic greatest common divisor by Euclid.
    pub fn gcd(&self, other: &Poly, field: &Field) -> Result<Poly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, field)?;
            a = b;
            b = r;
        }
        a.monic(field)
    }

    pub fn derivative(&self, field: &Field) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| field.mul(field.from_int((i % field.p() as usize) as i64), c))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x0: Fe, field: &Field) -> Fe {
        self.coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| field.add(field.mul(acc, x0), c))
    }

    /// `self(x^k)`.
    pub fn compose_power(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Fe::ZERO; (self.coeffs.len() - 1) * k + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c;
        }
        Poly::from_coeffs(coeffs)
    }

    /// `g` with `self = g(x^k)`, when every exponent in the support is a multiple of k.
    pub fn contract_power(&self, k: usize) -> Option<Poly> {
        if k == 0 {
            return None;
        }
        if self
            .coeffs
            .iter()
            .enumerate()
            .any(|(i, c)| i % k != 0 && !c.is_zero())
        {
            return None;
        }
        Some(Poly::from_coeffs(
            self.coeffs.iter().step_by(k).copied().collect(),
        ))
    }

    /// `b` with `b^p = self`, when `self` is a polynomial in `x^p`.
    pub fn pth_root(&self, field: &Field) -> Option<Poly> {
        let g = self.contract_power(field.p() as usize)?;
        Some(Poly::from_coeffs(
            g.coeffs.iter().map(|&c| field.pth_root(c)).collect(),
        ))
    }

    /// `self^e mod modulus`.
    pub fn powmod(&self, mut e: u64, modulus: &Poly, field: &Field) -> Result<Poly> {
        let mut base = self.rem(modulus, field)?;
        let mut acc = Poly::one().rem(modulus, field)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, field).rem(modulus, field)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, field).rem(modulus, field)?;
            }
        }
        Ok(acc)
    }

    /// Distinct-degree irreducibility test over the field of order q.
    pub fn is_irreducible(&self, field: &Field) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let x = Poly::x();
        let mut h = x.clone();
        for _ in 1..=n / 2 {
            h = match h.powmod(field.q() as u64, self, field) {
                Ok(h) => h,
                Err(_) => return false,
            };
            match h.sub(&x, field).gcd(self, field) {
                Ok(g) if g.is_one() => {}
                _ => return false,
            }
        }
        true
    }

    /// Squarefree decomposition in characteristic p. Repeated factors whose
    /// multiplicity is divisible by p survive the derivative; they are pulled
    /// out as p-th roots and handled recursively with multiplicities scaled by p.
    pub fn squarefree_decomposition(&self, field: &Field) -> Result<SqfDecomp> {
        let unit = self.leading().ok_or(Error::ZeroPolynomial)?;
        let monic = self.monic(field)?;
        let mut bands: BTreeMap<u64, Poly> = BTreeMap::new();
        for (g, e) in sqf_monic(&monic, field)? {
            let slot = bands.entry(e).or_insert_with(Poly::one);
            *slot = slot.mul(&g, field);
        }
        Ok(SqfDecomp {
            unit,
            parts: bands.into_iter().map(|(e, g)| (g, e)).collect(),
        })
    }

    /// `(d, reduced)` with `self = (x - x0)^d * reduced` and `reduced(x0) != 0`.
    pub fn deflate(&self, x0: Fe, field: &Field) -> Result<(u32, Poly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut d = 0;
        let mut cur = self.clone();
        loop {
            let (quot, rem) = synthetic_division(&cur, x0, field);
            if !rem.is_zero() || cur.is_constant() {
                return Ok((d, cur));
            }
            cur = quot;
            d += 1;
        }
    }

    /// Roots in the field with their exact multiplicities, by exhaustive search.
    pub fn rational_roots(&self, field: &Field) -> Result<Vec<(Fe, u32)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = Vec::new();
        for x0 in field.elements() {
            if self.evaluate(x0, field).is_zero() {
                let (d, _) = self.deflate(x0, field)?;
                out.push((x0, d));
            }
        }
        Ok(out)
    }

    /// Power-form rendering with coefficients as element encodings.
    pub fn to_power_form(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            match (i, c.enc()) {
                (0, v) => write!(out, "{v}").unwrap(),
                (1, 1) => out.push('x'),
                (1, v) => write!(out, "{v}*x").unwrap(),
                (i, 1) => write!(out, "x^{i}").unwrap(),
                (i, v) => write!(out, "{v}*x^{i}").unwrap(),
            }
        }
        out
    }
}

/// Division by `x - x0`; returns `(quotient, remainder)`.
fn synthetic_division(a: &Poly, x0: Fe, field: &Field) -> (Poly, Fe) {
    let n = a.coeffs.len();
    if n == 0 {
        return (Poly::zero(), Fe::ZERO);
    }
    let mut quot = vec![Fe::ZERO; n - 1];
    let mut acc = Fe::ZERO;
    for i in (0..n).rev() {
        acc = field.add(field.mul(acc, x0), a.coeffs[i]);
        if i > 0 {
            quot[i - 1] = acc;
        }
    }
    (Poly::from_coeffs(quot), acc)
}

fn sqf_monic(f: &Poly, field: &Field) -> Result<Vec<(Poly, u64)>> {
    let stuck = || Error::Internal("squarefree decomposition did not terminate".into());
    let p = field.p() as u64;
    let Some(n) = f.degree() else {
        return Err(Error::ZeroPolynomial);
    };
    if n == 0 {
        return Ok(Vec::new());
    }
    let df = f.derivative(field);
    if df.is_zero() {
        let root = f.pth_root(field).ok_or_else(stuck)?;
        return Ok(scale_bands(sqf_monic(&root.monic(field)?, field)?, p));
    }
    let mut out = Vec::new();
    let mut c = f.gcd(&df, field)?;
    let mut w = f.div_exact(&c, field)?;
    let mut i = 1u64;
    while !w.is_constant() {
        if i > n as u64 + 1 {
            return Err(stuck());
        }
        let y = w.gcd(&c, field)?;
        let fac = w.div_exact(&y, field)?;
        if !fac.is_constant() {
            out.push((fac.monic(field)?, i));
        }
        c = c.div_exact(&y, field)?;
        w = y;
        i += 1;
    }
    if !c.is_constant() {
        let root = c.pth_root(field).ok_or_else(stuck)?;
        out.extend(scale_bands(sqf_monic(&root.monic(field)?, field)?, p));
    }
    Ok(out)
}

fn scale_bands(bands: Vec<(Poly, u64)>, p: u64) -> Vec<(Poly, u64)> {
    bands.into_iter().map(|(g, e)| (g, e * p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, m: u32) -> Field {
        Field::new(p, m, None).unwrap()
    }

    fn poly(encs: &[u64], field: &Field) -> Poly {
        Poly::from_encodings(encs, field).unwrap()
    }

    fn xpow(terms: &[usize], field: &Field) -> Poly {
        Poly::from_terms(
            &terms.iter().map(|&e| (e, Fe::ONE)).collect::<Vec<_>>(),
            field,
        )
    }

    #[test]
    fn divrem_basic() {
        let f = gf(2, 1);
        let (q, r) = xpow(&[2, 1], &f).divrem(&Poly::x(), &f).unwrap();
        assert_eq!(q, xpow(&[1, 0], &f));
        assert!(r.is_zero());
        assert_eq!(
            Poly::one().divrem(&Poly::zero(), &f),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn square_of_x8_plus_x() {
        let f = gf(2, 1);
        let a = xpow(&[8, 1], &f);
        assert_eq!(a.mul(&a, &f), xpow(&[16, 2], &f));
    }

    #[test]
    fn gcd_cases() {
        let f2 = gf(2, 1);
        assert_eq!(xpow(&[2, 1], &f2).gcd(&Poly::x(), &f2).unwrap(), Poly::x());
        let f16 = gf(2, 4);
        let a = xpow(&[16, 2], &f16);
        let b = xpow(&[2, 1], &f16);
        assert_eq!(a.gcd(&b, &f16).unwrap(), b);
        let c = poly(&[3, 0, 5], &f16);
        assert_eq!(c.gcd(&Poly::zero(), &f16).unwrap(), c.monic(&f16).unwrap());
        assert_eq!(Poly::zero().gcd(&Poly::zero(), &f16), Err(Error::BothZero));
    }

    #[test]
    fn derivative_in_characteristic_p() {
        for (p, m) in [(2, 2), (3, 2), (5, 1)] {
            let f = gf(p, m);
            assert!(xpow(&[p as usize], &f).derivative(&f).is_zero());
            let q = f.q() as usize;
            let xq_minus_x = Poly::from_terms(&[(q, Fe::ONE), (1, f.from_int(-1))], &f);
            assert_eq!(xq_minus_x.derivative(&f), Poly::constant(f.from_int(-1)));
            assert!(Poly::constant(Fe::ONE).derivative(&f).is_zero());
        }
    }

    #[test]
    fn evaluation_cases() {
        let f16 = gf(2, 4);
        let all: Vec<usize> = (1..=14).collect();
        let g = xpow(&all, &f16);
        for u in f16.elements().skip(2) {
            assert_eq!(g.evaluate(u, &f16), Fe::ONE);
        }
        let c = poly(&[7, 3, 9], &f16);
        assert_eq!(c.evaluate(Fe::ZERO, &f16), f16.element(7).unwrap());
        let x16x = xpow(&[16, 1], &f16);
        assert!(f16.elements().all(|a| x16x.evaluate(a, &f16).is_zero()));
    }

    #[test]
    fn squarefree_of_x16_plus_x2() {
        let f = gf(2, 1);
        let d = xpow(&[16, 2], &f).squarefree_decomposition(&f).unwrap();
        assert_eq!(d.unit, Fe::ONE);
        assert_eq!(d.parts, vec![(xpow(&[8, 1], &f), 2)]);
        let d = Poly::x().squarefree_decomposition(&f).unwrap();
        assert_eq!(d.parts, vec![(Poly::x(), 1)]);
        assert_eq!(
            Poly::zero().squarefree_decomposition(&f),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn squarefree_inverts_construction_over_gf3() {
        let f = gf(3, 1);
        let x = Poly::x();
        let x1 = xpow(&[1, 0], &f);
        let x2_1 = xpow(&[2, 0], &f);
        let input = x.pow(2, &f).mul(&x1.pow(3, &f), &f).mul(&x2_1, &f);
        let d = input.squarefree_decomposition(&f).unwrap();
        assert_eq!(d.parts, vec![(x2_1, 1), (x, 2), (x1, 3)]);
        assert_eq!(d.reconstruct(&f), input);
        assert_eq!(d.distinct_roots(), 4);
    }

    #[test]
    fn roots_over_gf64() {
        let f = gf(2, 6);
        assert!(xpow(&[4, 1, 0], &f).rational_roots(&f).unwrap().is_empty());
        let roots = xpow(&[2, 1, 0], &f).rational_roots(&f).unwrap();
        assert_eq!(roots.len(), 2);
        for (r, mult) in roots {
            assert_eq!(mult, 1);
            assert!(f.in_subfield(r, 2) && r != Fe::ONE && r != Fe::ZERO);
        }
        let f16 = gf(2, 4);
        let all = xpow(&[16, 1], &f16).rational_roots(&f16).unwrap();
        assert_eq!(all.len(), 16);
        assert!(all.iter().all(|&(_, m)| m == 1));
    }

    #[test]
    fn deflate_cases() {
        let f2 = gf(2, 1);
        assert_eq!(
            xpow(&[2, 1], &f2).deflate(Fe::ZERO, &f2).unwrap(),
            (1, xpow(&[1, 0], &f2))
        );
        let f16 = gf(2, 4);
        assert_eq!(
            xpow(&[16, 2], &f16).deflate(Fe::ZERO, &f16).unwrap(),
            (2, xpow(&[14, 0], &f16))
        );
        let a = xpow(&[3, 0], &f16);
        assert_eq!(a.deflate(Fe::ZERO, &f16).unwrap(), (0, a.clone()));
    }

    #[test]
    fn irreducibility_matches_known_lists() {
        let f2 = gf(2, 1);
        // the three irreducible quartics over GF(2)
        let count = (16..32u64)
            .filter(|&enc| {
                let coeffs: Vec<u64> = (0..5).map(|i| (enc >> i) & 1).collect();
                poly(&coeffs, &f2).is_irreducible(&f2)
            })
            .count();
        assert_eq!(count, 3);
        let f4 = gf(2, 2);
        // x^2 + x + 1 splits over GF(4)
        assert!(!xpow(&[2, 1, 0], &f4).is_irreducible(&f4));
        assert!(xpow(&[2, 1, 0], &f2).is_irreducible(&f2));
    }

    #[test]
    fn power_form_rendering() {
        let f = gf(3, 1);
        assert_eq!(poly(&[0, 2, 0, 1], &f).to_power_form(), "x^3 + 2*x");
        assert_eq!(Poly::zero().to_power_form(), "0");
    }
}
