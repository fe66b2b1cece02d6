//! Genus and exact point counts of Kummer covers `y^n = f(x)` with `n | q - 1`.
//!
//! Genus comes from the tame Hurwitz formula over the divisor profile of `f`.
//! Points are counted fiber by fiber over `P^1(F_q)`: at a point where `f` has
//! valuation `d` and local leading coefficient `c`, there are `m = gcd(n, d)`
//! places above it (with `gcd(n, 0) = n`), and they are all rational when `c` is
//! an `m`-th power in `F_q^*`, otherwise none is.

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::arith;
use crate::divisors::{DivisorProfile, PlaceRecord, Point, RatFun};
use crate::error::{Error, Result};
use crate::gf::Field;

#[derive(Clone, Debug)]
pub struct KummerCurve {
    field: Arc<Field>,
    n: u64,
    f: RatFun,
    profile: DivisorProfile,
}

/// Exact points/genus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub genus: u64,
    pub points: u64,
}

/// One analyzed curve; serializes to the report record schema.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveReport {
    pub field: String,
    pub n: u64,
    pub num: Vec<u32>,
    pub den: Vec<u32>,
    pub genus: u64,
    pub points: u64,
    pub hasse_weil: u64,
    #[serde(serialize_with = "serialize_ratio")]
    pub ratio: Option<Ratio>,
    pub family: Option<String>,
    pub predicted: Option<Prediction>,
    pub profile: Vec<PlaceRecord>,
}

fn serialize_ratio<S: Serializer>(
    ratio: &Option<Ratio>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match ratio {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_str("undefined"),
    }
}

impl Ratio {
    /// `None` when the denominator is zero.
    pub fn new(num: u64, den: u64) -> Option<Ratio> {
        if den == 0 {
            return None;
        }
        let g = arith::gcd(num, den);
        Some(Ratio {
            num: num / g,
            den: den / g,
        })
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// `q + 1 + floor(2 g sqrt(q))`.
pub fn hasse_weil(q: u64, genus: u64) -> u64 {
    let g = genus as u128;
    q + 1 + arith::isqrt(4 * g * g * q as u128) as u64
}

/// Contribution of one point of `P^1(F_q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fiber {
    /// Rational points above the point.
    pub points: u64,
    /// `gcd(n, d)`: number of places above the point.
    pub places: u64,
}

impl KummerCurve {
    pub fn new(field: Arc<Field>, n: u64, f: RatFun) -> Result<KummerCurve> {
        let q_minus_1 = field.q() as u64 - 1;
        if n < 2 {
            return Err(Error::DegreeTooSmall);
        }
        if !q_minus_1.is_multiple_of(n) {
            return Err(Error::DegreeNotDividing { n, q_minus_1 });
        }
        if f.is_constant() {
            return Err(Error::ConstantFunction);
        }
        let profile = f.divisor_profile(&field)?;
        let gcd = profile.power_class_gcd(n);
        if gcd != 1 {
            return Err(Error::ReducibleCover { n, gcd });
        }
        Ok(KummerCurve {
            field,
            n,
            f,
            profile,
        })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn f(&self) -> &RatFun {
        &self.f
    }

    pub fn profile(&self) -> &DivisorProfile {
        &self.profile
    }

    /// `2g - 2 = -2n + sum count * (n - gcd(n, |d|))`.
    pub fn genus(&self) -> Result<u64> {
        let n = self.n as i128;
        let sum: i128 = self
            .profile
            .places()
            .iter()
            .map(|pd| pd.count() as i128 * (n - arith::gcd(self.n, pd.d.unsigned_abs()) as i128))
            .sum();
        let two_g_minus_2 = sum - 2 * n;
        if two_g_minus_2 % 2 != 0 || two_g_minus_2 < -2 {
            return Err(Error::InternalParityError(two_g_minus_2));
        }
        Ok(((two_g_minus_2 + 2) / 2) as u64)
    }

    pub fn fiber(&self, point: Point) -> Result<Fiber> {
        let (d, c) = self.f.local_data(point, &self.field)?;
        let places = arith::gcd(self.n, d.unsigned_abs());
        let points = if self.field.is_dth_power(c, places)? {
            places
        } else {
            0
        };
        Ok(Fiber { points, places })
    }

    /// All points of `P^1(F_q)`: the field elements in encoding order, then infinity.
    pub fn base_points(&self) -> impl Iterator<Item = Point> + '_ {
        self.field
            .elements()
            .map(Point::Finite)
            .chain(std::iter::once(Point::Infinity))
    }

    pub fn count_points(&self) -> Result<u64> {
        self.base_points()
            .map(|pt| self.fiber(pt).map(|fb| fb.points))
            .sum()
    }

    /// Nonzero fiber contributions at the rational branch points.
    pub fn branch_contributions(&self) -> Result<Vec<(Point, u64)>> {
        let mut out = Vec::new();
        for (pt, d, _) in self.profile.rational() {
            if d % self.n as i64 != 0 {
                let fb = self.fiber(pt)?;
                if fb.points > 0 {
                    out.push((pt, fb.points));
                }
            }
        }
        Ok(out)
    }

    /// Analyzes the curve; a supplied prediction must match the engine exactly.
    pub fn report(
        &self,
        predicted: Option<Prediction>,
        family: Option<String>,
    ) -> Result<CurveReport> {
        let genus = self.genus()?;
        let points = self.count_points()?;
        let q = self.field.q() as u64;
        let bound = hasse_weil(q, genus);
        if points > bound {
            return Err(Error::WeilBoundViolated { points, bound });
        }
        if let Some(pred) = predicted {
            if pred.genus != genus || pred.points != points {
                return Err(Error::PredictionMismatch {
                    expected_genus: pred.genus,
                    expected_points: pred.points,
                    genus,
                    points,
                });
            }
        }
        Ok(CurveReport {
            field: self.field.descriptor(),
            n: self.n,
            num: self.f.num().encodings(),
            den: self.f.den().encodings(),
            genus,
            points,
            hasse_weil: bound,
            ratio: Ratio::new(points, genus),
            family,
            predicted,
            profile: self.profile.records(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Fe;
    use crate::upoly::Poly;

    fn gf(p: u32, m: u32) -> Arc<Field> {
        Arc::new(Field::new(p, m, None).unwrap())
    }

    fn xpow(terms: &[usize], field: &Field) -> Poly {
        Poly::from_terms(
            &terms.iter().map(|&e| (e, Fe::ONE)).collect::<Vec<_>>(),
            field,
        )
    }

    fn curve(field: &Arc<Field>, n: u64, num: Poly, den: Poly) -> Result<KummerCurve> {
        let f = RatFun::new(num, den, field)?;
        KummerCurve::new(field.clone(), n, f)
    }

    #[test]
    fn split_cover_over_f16() {
        let f16 = gf(2, 4);
        let c = curve(&f16, 15, xpow(&[16, 2], &f16), xpow(&[2, 1], &f16)).unwrap();
        assert_eq!(c.genus().unwrap(), 49);
        assert_eq!(c.count_points().unwrap(), 213);
        let fb = c.fiber(Point::Finite(Fe::ZERO)).unwrap();
        assert_eq!(
            fb,
            Fiber {
                points: 1,
                places: 1
            }
        );
        assert_eq!(c.branch_contributions().unwrap().len(), 3);
    }

    #[test]
    fn trace_split_over_f64() {
        let f64 = gf(2, 6);
        let c = curve(&f64, 63, xpow(&[32, 16], &f64), xpow(&[8, 4, 2, 1], &f64)).unwrap();
        assert_eq!(c.genus().unwrap(), 214);
        assert_eq!(
            c.fiber(Point::Infinity).unwrap(),
            Fiber {
                points: 3,
                places: 3
            }
        );
        assert_eq!(c.count_points().unwrap(), 1901);
    }

    #[test]
    fn construction_errors() {
        let f9 = gf(3, 2);
        let sq = curve(&f9, 4, xpow(&[2], &f9), Poly::one());
        assert_eq!(sq.unwrap_err(), Error::ReducibleCover { n: 4, gcd: 2 });
        let f8 = gf(2, 3);
        let e = curve(&f8, 3, Poly::x(), Poly::one()).unwrap_err();
        assert_eq!(e, Error::DegreeNotDividing { n: 3, q_minus_1: 7 });
        let e = curve(&f8, 7, Poly::one(), Poly::one()).unwrap_err();
        assert_eq!(e, Error::ConstantFunction);
    }

    #[test]
    fn genus_zero_ratio_undefined() {
        let f9 = gf(3, 2);
        let c = curve(&f9, 4, Poly::x(), Poly::one()).unwrap();
        let r = c.report(None, None).unwrap();
        assert_eq!(r.genus, 0);
        assert_eq!(r.points, 10);
        assert_eq!(r.ratio, None);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"ratio\":\"undefined\""));
    }

    #[test]
    fn prediction_mismatch_is_an_error() {
        let f16 = gf(2, 4);
        let c = curve(&f16, 15, xpow(&[16, 2], &f16), xpow(&[2, 1], &f16)).unwrap();
        let good = Prediction {
            genus: 49,
            points: 213,
        };
        let r = c.report(Some(good), Some("full".into())).unwrap();
        assert_eq!(r.hasse_weil, 16 + 1 + 2 * 49 * 4);
        assert_eq!(r.ratio, Ratio::new(213, 49));
        let bad = Prediction {
            genus: 49,
            points: 212,
        };
        assert!(matches!(
            c.report(Some(bad), None),
            Err(Error::PredictionMismatch { .. })
        ));
    }

    #[test]
    fn hasse_weil_floor() {
        // 2 * 24 * sqrt(27) = 249.41...
        assert_eq!(hasse_weil(27, 24), 28 + 249);
        assert_eq!(hasse_weil(16, 2), 33);
        assert_eq!(hasse_weil(9, 13), 10 + 78);
    }

    #[test]
    fn ratio_ordering_is_exact() {
        let a = Ratio::new(225, 40).unwrap();
        let b = Ratio::new(213, 49).unwrap();
        assert!(a > b);
        assert_eq!(a.to_string(), "45/8");
    }
}
