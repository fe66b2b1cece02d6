//! Reduced rational functions and their divisors on the projective line.
//!
//! Zeros carry positive multiplicity, poles negative. Rational places record the
//! local leading coefficient `c` with `f = t^d (c + O(t))`, where the uniformizer
//! is `t = x - x0` at a finite point and `t = 1/x` at infinity. Points of the
//! support that are not rational are kept only as `(multiplicity, count)`
//! aggregates.

use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::upoly::Poly;

/// `num / den` with `gcd(num, den) = 1`, `den` monic and `num != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

/// A point of `P^1(F_q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Finite(Fe),
    Infinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Location {
    Finite(Fe),
    Infinity,
    /// `count` conjugate points of the support that are not rational.
    Closure {
        count: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PlaceData {
    pub location: Location,
    pub d: i64,
    /// Local leading coefficient, present exactly for rational locations.
    pub c: Option<Fe>,
}

impl PlaceData {
    /// Number of closure points this record stands for.
    pub fn count(&self) -> u64 {
        match self.location {
            Location::Closure { count } => count,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorProfile {
    places: Vec<PlaceData>,
    ell: u64,
}

/// Serialized form of a [`PlaceData`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceRecord {
    pub loc: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<u32>,
    pub d: i64,
    pub count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<u32>,
}

impl From<&PlaceData> for PlaceRecord {
    fn from(place: &PlaceData) -> Self {
        let (loc, x) = match place.location {
            Location::Finite(x0) => ("x0", Some(x0.enc())),
            Location::Infinity => ("inf", None),
            Location::Closure { .. } => ("class", None),
        };
        PlaceRecord {
            loc,
            x,
            d: place.d,
            count: place.count(),
            c: place.c.map(Fe::enc),
        }
    }
}

impl RatFun {
    /// Cancels the gcd and makes the denominator monic.
    pub fn new(num: Poly, den: Poly, field: &Field) -> Result<RatFun> {
        if num.is_zero() {
            return Err(Error::ZeroNumerator);
        }
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let g = num.gcd(&den, field)?;
        let (mut num, mut den) = (num, den);
        if !g.is_one() {
            num = num.div_exact(&g, field)?;
            den = den.div_exact(&g, field)?;
        }
        let lead = den.leading().ok_or(Error::ZeroDenominator)?;
        if lead != Fe::ONE {
            let inv = field.inv(lead)?;
            num = num.scale(inv, field);
            den = den.scale(inv, field);
        }
        Ok(RatFun { num, den })
    }

    pub fn polynomial(num: Poly) -> Result<RatFun> {
        if num.is_zero() {
            return Err(Error::ZeroNumerator);
        }
        Ok(RatFun {
            num,
            den: Poly::one(),
        })
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn scale(&self, c: Fe, field: &Field) -> Result<RatFun> {
        RatFun::new(self.num.scale(c, field), self.den.clone(), field)
    }

    /// `f(x^k)`.
    pub fn compose_power(&self, k: usize) -> RatFun {
        RatFun {
            num: self.num.compose_power(k),
            den: self.den.compose_power(k),
        }
    }

    /// `g` with `f = g(x^k)`, if it exists.
    pub fn contract_power(&self, k: usize) -> Option<RatFun> {
        Some(RatFun {
            num: self.num.contract_power(k)?,
            den: self.den.contract_power(k)?,
        })
    }

    /// Valuation `d` and local leading coefficient `c` at a rational point;
    /// `d = 0` and `c = f(x0)` away from the support.
    pub fn local_data(&self, point: Point, field: &Field) -> Result<(i64, Fe)> {
        match point {
            Point::Infinity => {
                let d =
                    self.den.degree().unwrap_or(0) as i64 - self.num.degree().unwrap_or(0) as i64;
                let c = field.div(
                    self.num.leading().ok_or(Error::ZeroNumerator)?,
                    self.den.leading().ok_or(Error::ZeroDenominator)?,
                )?;
                Ok((d, c))
            }
            Point::Finite(x0) => {
                let n0 = self.num.evaluate(x0, field);
                let d0 = self.den.evaluate(x0, field);
                if !n0.is_zero() && !d0.is_zero() {
                    return Ok((0, field.div(n0, d0)?));
                }
                let (dn, rn) = self.num.deflate(x0, field)?;
                let (dd, rd) = self.den.deflate(x0, field)?;
                let c = field.div(rn.evaluate(x0, field), rd.evaluate(x0, field))?;
                Ok((dn as i64 - dd as i64, c))
            }
        }
    }

    pub fn divisor_profile(&self, field: &Field) -> Result<DivisorProfile> {
        let mut finite = Vec::new();
        let mut classes = Vec::new();
        for (poly, sign) in [(&self.num, 1i64), (&self.den, -1i64)] {
            if poly.is_constant() {
                continue;
            }
            let sqf = poly.squarefree_decomposition(field)?;
            for (g, e) in &sqf.parts {
                let d = sign * *e as i64;
                let roots = g.rational_roots(field)?;
                for &(x0, _) in &roots {
                    let (local_d, c) = self.local_data(Point::Finite(x0), field)?;
                    if local_d != d {
                        return Err(Error::Internal(format!(
                            "multiplicity band {d} disagrees with local valuation {local_d}"
                        )));
                    }
                    finite.push(PlaceData {
                        location: Location::Finite(x0),
                        d,
                        c: Some(c),
                    });
                }
                let rest = g.degree().unwrap_or(0) as u64 - roots.len() as u64;
                if rest > 0 {
                    classes.push(PlaceData {
                        location: Location::Closure { count: rest },
                        d,
                        c: None,
                    });
                }
            }
        }
        finite.sort_by_key(|pd| match pd.location {
            Location::Finite(x0) => x0,
            _ => Fe::ZERO,
        });
        classes.sort_by_key(|pd| std::cmp::Reverse(pd.d));
        let mut places = finite;
        places.extend(classes);
        let (d_inf, c_inf) = self.local_data(Point::Infinity, field)?;
        if d_inf != 0 {
            places.push(PlaceData {
                location: Location::Infinity,
                d: d_inf,
                c: Some(c_inf),
            });
        }
        let ell = places.iter().map(PlaceData::count).sum();
        Ok(DivisorProfile { places, ell })
    }
}

impl DivisorProfile {
    pub fn places(&self) -> &[PlaceData] {
        &self.places
    }

    /// Number of distinct closure points in the support, infinity included.
    pub fn ell(&self) -> u64 {
        self.ell
    }

    /// `sum d * count`; zero for every principal divisor.
    pub fn degree(&self) -> i64 {
        self.places.iter().map(|pd| pd.d * pd.count() as i64).sum()
    }

    /// Rational places of the support.
    pub fn rational(&self) -> impl Iterator<Item = (Point, i64, Fe)> + '_ {
        self.places
            .iter()
            .filter_map(|pd| match (pd.location, pd.c) {
                (Location::Finite(x0), Some(c)) => Some((Point::Finite(x0), pd.d, c)),
                (Location::Infinity, Some(c)) => Some((Point::Infinity, pd.d, c)),
                _ => None,
            })
    }

    /// `gcd(n, |d_1|, |d_2|, ...)`; the cover `y^n = f` is geometrically
    /// irreducible exactly when this is 1.
    pub fn power_class_gcd(&self, n: u64) -> u64 {
        self.places
            .iter()
            .fold(n, |g, pd| arith::gcd(g, pd.d.unsigned_abs()))
    }

    pub fn records(&self) -> Vec<PlaceRecord> {
        self.places.iter().map(PlaceRecord::from).collect()
    }
}
