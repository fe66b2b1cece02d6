//! Reference bounds for `N_q(g)`: best known point counts and upper bounds,
//! embedded verbatim. No network access.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    TableP2,
    TableP3,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RefBound {
    pub q: u64,
    pub genus: u64,
    /// Best known number of points (new entry, lower end).
    pub lower: u64,
    /// Upper end of the interval, or the Oesterlé bound.
    pub upper: u64,
    /// Previously known interval; `None` for new-only rows.
    pub old: Option<(u64, u64)>,
    pub source: Source,
}

const fn row(
    q: u64,
    genus: u64,
    lower: u64,
    upper: u64,
    old: Option<(u64, u64)>,
    source: Source,
) -> RefBound {
    RefBound {
        q,
        genus,
        lower,
        upper,
        old,
        source,
    }
}

use Source::{TableP2, TableP3, Text};

pub static TABLE_P2: [RefBound; 11] = [
    row(8, 25, 86, 97, Some((84, 97)), TableP2),
    row(8, 51, 132, 173, None, TableP2),
    row(16, 12, 83, 97, Some((68, 97)), TableP2),
    row(16, 20, 127, 140, Some((121, 140)), TableP2),
    row(16, 40, 225, 244, Some((197, 244)), TableP2),
    row(16, 49, 213, 286, None, TableP2),
    row(32, 45, 313, 428, Some((304, 428)), TableP2),
    row(32, 60, 468, 542, None, TableP2),
    row(32, 135, 933, 1098, None, TableP2),
    row(64, 214, 1901, 2553, None, TableP2),
    row(64, 428, 3969, 4786, None, TableP2),
];

pub static TABLE_P3: [RefBound; 11] = [
    row(9, 13, 64, 66, Some((60, 66)), TableP3),
    row(9, 33, 128, 133, Some((109, 133)), TableP3),
    row(9, 41, 128, 158, Some((119, 158)), TableP3),
    row(27, 24, 208, 235, Some((190, 235)), TableP3),
    row(27, 49, 314, 409, None, TableP3),
    row(27, 98, 624, 745, None, TableP3),
    row(27, 124, 680, 901, None, TableP3),
    row(81, 17, 288, 387, None, TableP3),
    row(81, 625, 6400, 7824, None, TableP3),
    row(243, 3854, 58080, 81835, None, TableP3),
    row(243, 4096, 58568, 86441, None, TableP3),
];

/// Intervals quoted outside the tables.
pub static TEXT: [RefBound; 2] = [
    row(27, 48, 325, 402, None, Text),
    row(9, 9, 48, 51, None, Text),
];

/// Table rows realized by constructions this crate does not implement
/// (Artin-Schreier towers and covers of curves of positive genus).
pub static EXEMPT: [(u64, u64); 7] = [
    (8, 25),
    (8, 51),
    (16, 20),
    (32, 45),
    (9, 33),
    (9, 41),
    (81, 17),
];

pub fn table_rows() -> impl Iterator<Item = &'static RefBound> {
    TABLE_P2.iter().chain(TABLE_P3.iter())
}

pub fn all() -> impl Iterator<Item = &'static RefBound> {
    table_rows().chain(TEXT.iter())
}

/// Exact `(q, g)` lookup; table rows take precedence over text values.
pub fn reference_lookup(q: u64, genus: u64) -> Option<&'static RefBound> {
    all().find(|r| r.q == q && r.genus == genus)
}

pub fn is_exempt(q: u64, genus: u64) -> bool {
    EXEMPT.contains(&(q, genus))
}

/// `floor(upper / sqrt(2))`, computed as `isqrt(floor(upper^2 / 2))`.
pub fn qualification_threshold(upper: u64) -> u64 {
    kummer_core::arith::isqrt(upper as u128 * upper as u128 / 2) as u64
}
