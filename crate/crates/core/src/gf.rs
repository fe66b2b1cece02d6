//! Arithmetic in GF(p^m).
//!
//! Elements are stored by their canonical encoding `enc(a) = sum coords[i] * p^i`
//! where `coords` are the coordinates in the polynomial basis `1, X, ..., X^(m-1)`
//! modulo the field's modulus. The encoding doubles as the deterministic order
//! used by every enumeration in the crate.
//!
//! Multiplication is table driven once a multiplicative generator has been
//! located; the polynomial-basis routine that builds the tables stays available
//! as [`Field::mul_poly_basis`] and serves as the reference implementation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::upoly::Poly;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;
/// Largest supported characteristic.
pub const MAX_CHARACTERISTIC: u64 = 1 << 16;
const DENSE_ADD_LIMIT: u32 = 1024;

/// A field element, identified by its canonical encoding in `[0, q)`.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn enc(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug)]
enum AddImpl {
    Xor,
    Prime,
    Dense(Vec<u32>),
    Digits,
}

#[derive(Clone, Debug)]
enum MulImpl {
    Prime,
    /// `exp` has length `2(q-1)` so that `log a + log b` never needs a reduction.
    Log {
        exp: Vec<u32>,
        log: Vec<u32>,
    },
    /// Reduction of coordinate vectors; only reached for an unchecked modulus
    /// that does not define a field.
    PolyBasis,
}

/// A finite field GF(p^m) with an explicit monic modulus over GF(p).
#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    default_modulus: bool,
    add: AddImpl,
    mul: MulImpl,
    neg: Vec<u32>,
    frob: Vec<u32>,
    root: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for Field {}

fn check_sizes(p: u32, m: u32) -> Result<u32> {
    if !arith::is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if p as u64 > MAX_CHARACTERISTIC {
        return Err(Error::FieldTooLarge(p as u64));
    }
    if m == 0 {
        return Err(Error::DegreeMismatch {
            expected: m,
            got: "extension degree 0".into(),
        });
    }
    let q = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
    if q > MAX_ORDER {
        return Err(Error::FieldTooLarge(q));
    }
    Ok(q as u32)
}

fn digits(mut n: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((n % p as u64) as u32);
        n /= p as u64;
    }
    out
}

impl Field {
    /// Builds GF(p^m). Without an explicit modulus the monic irreducible of
    /// degree m with the smallest encoding is used.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Field> {
        let q = check_sizes(p, m)?;
        match modulus {
            Some(coeffs) => {
                let modulus = Self::validate_modulus_shape(p, m, coeffs)?;
                if !Self::modulus_irreducible(p, &modulus) {
                    return Err(Error::ReducibleModulus { p });
                }
                let default = Self::default_modulus(p, m)? == modulus;
                Ok(Self::build(p, m, q, modulus, default))
            }
            None => {
                let modulus = Self::default_modulus(p, m)?;
                Ok(Self::build(p, m, q, modulus, true))
            }
        }
    }

    /// GF(p) with modulus `x`.
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// Builds the quotient ring GF(p)[X]/(modulus) without checking that the
    /// modulus is irreducible. Meant for negative controls only: with a
    /// reducible modulus the result is not a field and arithmetic that needs
    /// inverses produces garbage.
    pub fn with_unchecked_modulus(p: u32, m: u32, modulus: &[u32]) -> Result<Field> {
        let q = check_sizes(p, m)?;
        let modulus = Self::validate_modulus_shape(p, m, modulus)?;
        Ok(Self::build(p, m, q, modulus, false))
    }

    fn validate_modulus_shape(p: u32, m: u32, coeffs: &[u32]) -> Result<Vec<u32>> {
        if coeffs.len() != m as usize + 1 || coeffs.last() != Some(&1) {
            return Err(Error::DegreeMismatch {
                expected: m,
                got: format!("{coeffs:?}"),
            });
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= p) {
            return Err(Error::ElementOutOfRange {
                enc: c as u64,
                q: p,
            });
        }
        Ok(coeffs.to_vec())
    }

    fn modulus_irreducible(p: u32, modulus: &[u32]) -> bool {
        if modulus.len() == 2 {
            return true;
        }
        let base = Self::build(p, 1, p, vec![0, 1], true);
        let poly = Poly::from_coeffs(modulus.iter().map(|&c| Fe(c)).collect());
        poly.is_irreducible(&base)
    }

    /// The monic irreducible of degree m over GF(p) with the least encoding.
    pub fn default_modulus(p: u32, m: u32) -> Result<Vec<u32>> {
        check_sizes(p, m)?;
        if m == 1 {
            return Ok(vec![0, 1]);
        }
        let lead = (p as u64).pow(m);
        for enc in 0..lead {
            let mut coeffs = digits(enc, p, m as usize);
            coeffs.push(1);
            if coeffs[0] == 0 {
                continue;
            }
            if Self::modulus_irreducible(p, &coeffs) {
                return Ok(coeffs);
            }
        }
        Err(Error::Internal(format!(
            "no irreducible polynomial of degree {m} over GF({p})"
        )))
    }

    fn build(p: u32, m: u32, q: u32, modulus: Vec<u32>, default_modulus: bool) -> Field {
        let add = if p == 2 {
            AddImpl::Xor
        } else if m == 1 {
            AddImpl::Prime
        } else {
            AddImpl::Digits
        };
        let mut field = Field {
            p,
            m,
            q,
            modulus,
            default_modulus,
            add,
            mul: if m == 1 {
                MulImpl::Prime
            } else {
                MulImpl::PolyBasis
            },
            neg: Vec::new(),
            frob: Vec::new(),
            root: Vec::new(),
        };
        field.neg = (0..q)
            .map(|a| {
                let d = digits(a as u64, p, m as usize);
                field.compose(d.iter().map(|&c| (p - c) % p))
            })
            .collect();
        if p != 2 && m > 1 && q <= DENSE_ADD_LIMIT {
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = field.add_digits(a, b);
                }
            }
            field.add = AddImpl::Dense(table);
        }
        if m > 1 {
            if let Some(g) = field.find_generator() {
                let n = (q - 1) as usize;
                let mut exp = vec![0u32; 2 * n];
                let mut log = vec![0u32; q as usize];
                let mut cur = 1u32;
                for i in 0..n {
                    exp[i] = cur;
                    exp[i + n] = cur;
                    log[cur as usize] = i as u32;
                    cur = field.mul_poly_basis(Fe(cur), g).0;
                }
                field.mul = MulImpl::Log { exp, log };
            }
            field.frob = (0..q).map(|a| field.pow(Fe(a), p as u64).0).collect();
            let mut root = vec![0u32; q as usize];
            for (a, &b) in field.frob.iter().enumerate() {
                root[b as usize] = a as u32;
            }
            field.root = root;
        }
        field
    }

    fn find_generator(&self) -> Option<Fe> {
        let order = (self.q - 1) as u64;
        let primes = arith::prime_factors(order);
        (2..self.q).map(Fe).find(|&g| {
            self.pow_poly_basis(g, order) == Fe::ONE
                && primes
                    .iter()
                    .all(|&l| self.pow_poly_basis(g, order / l) != Fe::ONE)
        })
    }

    fn compose(&self, coords: impl Iterator<Item = u32>) -> u32 {
        let mut acc = 0u64;
        let mut scale = 1u64;
        for c in coords {
            acc += c as u64 * scale;
            scale *= self.p as u64;
        }
        acc as u32
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        let p = self.p;
        let (mut a, mut b) = (a, b);
        let mut acc = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.m {
            let s = (a % p + b % p) % p;
            acc += s * scale;
            scale = scale.wrapping_mul(p);
            a /= p;
            b /= p;
        }
        acc
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Ascending coefficients of the modulus (monic, degree m).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// `sqrt(q)` when m is even.
    pub fn sqrt_q(&self) -> Option<u64> {
        self.m
            .is_multiple_of(2)
            .then(|| (self.p as u64).pow(self.m / 2))
    }

    /// Descriptor in the `p^m` or `p^m/c0,...,1` syntax.
    pub fn descriptor(&self) -> String {
        if self.default_modulus {
            format!("{}^{}", self.p, self.m)
        } else {
            let coeffs: Vec<String> = self.modulus.iter().map(u32::to_string).collect();
            format!("{}^{}/{}", self.p, self.m, coeffs.join(","))
        }
    }

    /// Parses `p^m`, `p^m/c0,c1,...,1` or a bare prime `p`.
    pub fn from_descriptor(s: &str) -> Result<Field> {
        let bad = || Error::Parse(format!("bad field descriptor {s:?}"));
        let (head, modulus) = match s.split_once('/') {
            Some((h, m)) => (h.trim(), Some(m.trim())),
            None => (s.trim(), None),
        };
        let (p, m) = match head.split_once('^') {
            Some((p, m)) => (
                p.trim().parse::<u32>().map_err(|_| bad())?,
                m.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => (head.parse::<u32>().map_err(|_| bad())?, 1),
        };
        let modulus = modulus
            .map(|list| {
                list.split(',')
                    .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
                    .collect::<Result<Vec<u32>>>()
            })
            .transpose()?;
        Field::new(p, m, modulus.as_deref())
    }

    #[inline]
    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    #[inline]
    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// Element with the given canonical encoding.
    pub fn element(&self, enc: u64) -> Result<Fe> {
        if enc < self.q as u64 {
            Ok(Fe(enc as u32))
        } else {
            Err(Error::ElementOutOfRange { enc, q: self.q })
        }
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn coords(&self, a: Fe) -> Vec<u32> {
        digits(a.0 as u64, self.p, self.m as usize)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<Fe> {
        if coords.len() != self.m as usize || coords.iter().any(|&c| c >= self.p) {
            return Err(Error::Parse(format!("bad coordinates {coords:?}")));
        }
        Ok(Fe(self.compose(coords.iter().copied())))
    }

    /// All q elements in increasing encoding order, starting with 0.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + Clone {
        (0..self.q).map(Fe)
    }

    /// All q-1 nonzero elements in increasing encoding order.
    pub fn units(&self) -> impl Iterator<Item = Fe> + Clone {
        (1..self.q).map(Fe)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        match &self.add {
            AddImpl::Xor => Fe(a.0 ^ b.0),
            AddImpl::Prime => {
                let s = a.0 + b.0;
                Fe(if s >= self.p { s - self.p } else { s })
            }
            AddImpl::Dense(t) => Fe(t[(a.0 * self.q + b.0) as usize]),
            AddImpl::Digits => Fe(self.add_digits(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        match &self.mul {
            MulImpl::Prime => Fe(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32),
            MulImpl::Log { exp, log } => Fe(exp[(log[a.0 as usize] + log[b.0 as usize]) as usize]),
            MulImpl::PolyBasis => self.mul_poly_basis(a, b),
        }
    }

    /// Schoolbook product of coordinate vectors reduced modulo the modulus.
    pub fn mul_poly_basis(&self, a: Fe, b: Fe) -> Fe {
        let p = self.p as u64;
        let m = self.m as usize;
        let ca = self.coords(a);
        let cb = self.coords(b);
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for k in (m..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            // X^m = -(modulus[0] + ... + modulus[m-1] X^(m-1))
            for (i, &mi) in self.modulus[..m].iter().enumerate() {
                let idx = k - m + i;
                prod[idx] = (prod[idx] + (p - mi as u64) * c) % p;
            }
        }
        Fe(self.compose(prod[..m].iter().map(|&c| c as u32)))
    }

    fn pow_poly_basis(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_poly_basis(acc, base);
            }
            base = self.mul_poly_basis(base, base);
            e >>= 1;
        }
        acc
    }

    /// Square-and-multiply; `pow(a, 0) = 1`.
    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.mul {
            MulImpl::Log { exp, log } => {
                let n = self.q - 1;
                let l = log[a.0 as usize];
                Fe(exp[((n - l) % n) as usize])
            }
            _ => self.pow(a, self.q as u64 - 2),
        })
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^(p^k)`.
    pub fn frobenius(&self, a: Fe, k: u32) -> Fe {
        if self.m == 1 {
            return a;
        }
        let mut x = a.0;
        for _ in 0..k % self.m {
            x = self.frob[x as usize];
        }
        Fe(x)
    }

    /// The unique `b` with `b^p = a`.
    pub fn pth_root(&self, a: Fe) -> Fe {
        if self.m == 1 {
            return a;
        }
        Fe(self.root[a.0 as usize])
    }

    /// Absolute trace to GF(p), returned as a residue in `[0, p)`.
    pub fn trace_to_prime(&self, a: Fe) -> u32 {
        let mut acc = Fe::ZERO;
        let mut x = a;
        for _ in 0..self.m {
            acc = self.add(acc, x);
            x = self.frobenius(x, 1);
        }
        debug_assert!(acc.0 < self.p, "trace left the prime field");
        acc.0 % self.p
    }

    /// Whether `a` lies in `(F_q^*)^d`.
    pub fn is_dth_power(&self, a: Fe, d: u64) -> Result<bool> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        if d == 0 {
            return Err(Error::ZeroExponent);
        }
        let order = self.q as u64 - 1;
        let g = arith::gcd(d, order);
        Ok(self.pow(a, order / g) == Fe::ONE)
    }

    /// Whether `a` lies in the subfield of order `p^k`.
    pub fn in_subfield(&self, a: Fe, k: u32) -> bool {
        self.frobenius(a, k) == a
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn brute_irreducible(p: u32, coeffs: &[u32]) -> bool {
        // exhaustive trial division by every monic polynomial of degree 1..=deg/2
        let base = Field::prime(p).unwrap();
        let f = Poly::from_coeffs(coeffs.iter().map(|&c| Fe(c)).collect());
        let n = coeffs.len() - 1;
        for d in 1..=n / 2 {
            for enc in 0..(p as u64).pow(d as u32) {
                let mut g: Vec<Fe> = digits(enc, p, d).into_iter().map(Fe).collect();
                g.push(Fe::ONE);
                let g = Poly::from_coeffs(g);
                if f.divrem(&g, &base).unwrap().1.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn gf2_degree_one_modulus_is_x() {
        let f = Field::new(2, 1, None).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.q(), 2);
    }

    #[test]
    fn smallest_irreducible_quartic_over_gf2() {
        let oracle = (0..16u64)
            .map(|enc| {
                let mut c = digits(enc, 2, 4);
                c.push(1);
                c
            })
            .find(|c| brute_irreducible(2, c))
            .unwrap();
        assert_eq!(oracle, vec![1, 1, 0, 0, 1]);
        let f = Field::new(2, 4, None).unwrap();
        assert_eq!(f.modulus(), oracle.as_slice());
    }

    #[test]
    fn default_modulus_matches_exhaustive_search() {
        for (p, m) in [(2, 2), (2, 3), (2, 5), (3, 2), (3, 3), (5, 2), (3, 4)] {
            let oracle = (0..(p as u64).pow(m))
                .map(|enc| {
                    let mut c = digits(enc, p, m as usize);
                    c.push(1);
                    c
                })
                .find(|c| brute_irreducible(p, c))
                .unwrap();
            assert_eq!(Field::default_modulus(p, m).unwrap(), oracle, "p={p} m={m}");
        }
    }

    #[test]
    fn explicit_modulus_for_f9() {
        let f = Field::new(3, 2, Some(&[1, 0, 1])).unwrap();
        // x^2 + 1 is also the least irreducible quadratic over GF(3)
        assert_eq!(f.descriptor(), "3^2");
        let g = Field::new(3, 2, Some(&[2, 2, 1])).unwrap();
        assert_eq!(g.descriptor(), "3^2/2,2,1");
        let i = f.element(3).unwrap();
        assert_eq!(f.mul(i, i), f.from_int(-1));
    }

    #[test]
    fn modulus_errors() {
        assert_eq!(Field::new(4, 1, None), Err(Error::NotPrime(4)));
        assert_eq!(
            Field::new(2, 2, Some(&[1, 0, 1])),
            Err(Error::ReducibleModulus { p: 2 })
        );
        assert!(matches!(
            Field::new(2, 3, Some(&[1, 1, 1])),
            Err(Error::DegreeMismatch { .. })
        ));
        assert!(matches!(
            Field::new(2, 21, None),
            Err(Error::FieldTooLarge(_))
        ));
    }

    #[test]
    fn descriptor_round_trip() {
        let f = Field::from_descriptor("2^4").unwrap();
        assert_eq!(f.descriptor(), "2^4");
        let g = Field::from_descriptor("2^4/1,1,0,0,1").unwrap();
        assert_eq!(g.descriptor(), "2^4");
        assert_eq!(f, g);
        let h = Field::from_descriptor("7").unwrap();
        assert_eq!((h.p(), h.m()), (7, 1));
        assert!(Field::from_descriptor("2^x").is_err());
    }

    #[test]
    fn x_times_x_cubed_in_gf16() {
        let f = Field::new(2, 4, None).unwrap();
        let x = f.element(2).unwrap();
        let x3 = f.element(8).unwrap();
        // x^4 = x + 1 modulo x^4 + x + 1
        assert_eq!(f.mul(x, x3), f.element(3).unwrap());
        assert_eq!(f.inv(Fe::ONE).unwrap(), Fe::ONE);
        assert_eq!(f.inv(Fe::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn table_multiplication_matches_polynomial_basis() {
        for (p, m) in [(2, 4), (3, 3), (5, 2), (2, 8), (7, 2)] {
            let f = Field::new(p, m, None).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul_poly_basis(a, b));
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, m) in [
            (2, 1),
            (3, 1),
            (2, 2),
            (2, 3),
            (3, 2),
            (5, 2),
            (2, 4),
            (3, 3),
            (2, 8),
        ] {
            let f = Field::new(p, m, None).unwrap();
            let q = f.q() as u64;
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
                assert_eq!(f.sub(a, a), Fe::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.pow(a, q - 1), Fe::ONE);
                    assert_eq!(f.mul(f.inv(a).unwrap(), a), Fe::ONE);
                }
                let coords = f.coords(a);
                assert!(coords.iter().all(|&c| c < p));
                assert_eq!(f.from_coords(&coords).unwrap(), a);
            }
        }
    }

    #[test]
    fn frobenius_properties() {
        for (p, m) in [(2, 4), (3, 3), (5, 2), (2, 6)] {
            let f = Field::new(p, m, None).unwrap();
            for a in f.elements() {
                assert_eq!(f.frobenius(a, 0), a);
                assert_eq!(f.frobenius(a, m), a);
                assert_eq!(f.frobenius(a, 1), f.pow(a, p as u64));
                assert_eq!(f.pow(f.pth_root(a), p as u64), a);
                for b in f.elements().step_by(3) {
                    assert_eq!(
                        f.frobenius(f.add(a, b), 1),
                        f.add(f.frobenius(a, 1), f.frobenius(b, 1))
                    );
                    assert_eq!(
                        f.frobenius(f.mul(a, b), 1),
                        f.mul(f.frobenius(a, 1), f.frobenius(b, 1))
                    );
                }
            }
        }
    }

    #[test]
    fn frobenius_of_i_in_f9() {
        let f = Field::new(3, 2, Some(&[1, 0, 1])).unwrap();
        let i = f.element(3).unwrap();
        assert_eq!(f.frobenius(i, 1), f.neg(i));
        assert_eq!(f.pth_root(Fe::ZERO), Fe::ZERO);
        assert_eq!(f.pth_root(Fe::ONE), Fe::ONE);
    }

    #[test]
    fn trace_kernel_sizes() {
        for (p, m) in [(2, 3), (2, 4), (3, 3), (5, 2), (3, 4)] {
            let f = Field::new(p, m, None).unwrap();
            assert_eq!(f.trace_to_prime(Fe::ZERO), 0);
            assert_eq!(f.trace_to_prime(Fe::ONE), m % p);
            let kernel = f.elements().filter(|&a| f.trace_to_prime(a) == 0).count();
            assert_eq!(kernel as u64, (p as u64).pow(m - 1));
            for a in f.elements() {
                for b in f.elements().step_by(5) {
                    let lhs = f.trace_to_prime(f.add(a, b));
                    assert_eq!(lhs, (f.trace_to_prime(a) + f.trace_to_prime(b)) % p);
                }
            }
        }
    }

    #[test]
    fn dth_powers_in_small_fields() {
        let f27 = Field::new(3, 3, None).unwrap();
        assert!(!f27.is_dth_power(f27.from_int(-1), 2).unwrap());
        assert_eq!(f27.is_dth_power(Fe::ZERO, 2), Err(Error::ZeroInput));

        let f9 = Field::new(3, 2, None).unwrap();
        let squares: BTreeSet<Fe> = f9.units().map(|u| f9.mul(u, u)).collect();
        for a in f9.units() {
            assert_eq!(f9.is_dth_power(a, 2).unwrap(), squares.contains(&a));
            assert!(f9.is_dth_power(a, 1).unwrap());
        }
        for d in 1..20 {
            assert!(f9.is_dth_power(Fe::ONE, d).unwrap());
        }
    }

    #[test]
    fn enumeration_order() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(f2.elements().collect::<Vec<_>>(), vec![Fe(0), Fe(1)]);
        let f4 = Field::new(2, 2, None).unwrap();
        assert_eq!(
            f4.elements().map(Fe::enc).collect::<Vec<_>>(),
            vec![0, 1, 2, 3]
        );
    }

    #[test]
    fn unchecked_modulus_falls_back_to_coordinates() {
        let ring = Field::with_unchecked_modulus(2, 4, &[1, 0, 0, 0, 1]).unwrap();
        let x1 = ring.element(3).unwrap(); // X + 1
                                           // (X + 1)^4 = X^4 + 1 = 0 in GF(2)[X]/(X^4 + 1)
        assert_eq!(ring.pow(x1, 4), Fe::ZERO);
    }

    #[test]
    fn modulus_selection_is_deterministic() {
        for (p, m) in [(2, 6), (3, 5), (5, 3)] {
            assert_eq!(
                Field::new(p, m, None).unwrap().modulus(),
                Field::new(p, m, None).unwrap().modulus()
            );
        }
    }
}
