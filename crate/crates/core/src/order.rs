//! The catalog of finite simple groups: exact order formulas, admissibility
//! constraints, exceptional-isomorphism aliases and Atlas-style names.
//!
//! Order formulas are data: every family is described by a q-power exponent,
//! a list of cyclotomic-style terms q^d -+ 1 and a center-divisor rule, and a
//! single generic evaluator multiplies them out. Names follow the Atlas, with
//! field sizes above 100 written exponentially (`L2(3^7)`).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::SpectrumError;
use crate::primes::{self, FactoredOrder, PrimeSet};

/// One of the 26 sporadic groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[allow(clippy::upper_case_acronyms)]
pub enum Sporadic {
    M11,
    M12,
    M22,
    M23,
    M24,
    J1,
    J2,
    J3,
    J4,
    Co1,
    Co2,
    Co3,
    Fi22,
    Fi23,
    Fi24,
    HS,
    McL,
    He,
    Ru,
    Suz,
    ON,
    HN,
    Ly,
    Th,
    B,
    M,
}

pub const ALL_SPORADIC: [Sporadic; 26] = [
    Sporadic::M11,
    Sporadic::M12,
    Sporadic::M22,
    Sporadic::M23,
    Sporadic::M24,
    Sporadic::J1,
    Sporadic::J2,
    Sporadic::J3,
    Sporadic::J4,
    Sporadic::Co1,
    Sporadic::Co2,
    Sporadic::Co3,
    Sporadic::Fi22,
    Sporadic::Fi23,
    Sporadic::Fi24,
    Sporadic::HS,
    Sporadic::McL,
    Sporadic::He,
    Sporadic::Ru,
    Sporadic::Suz,
    Sporadic::ON,
    Sporadic::HN,
    Sporadic::Ly,
    Sporadic::Th,
    Sporadic::B,
    Sporadic::M,
];

pub(crate) struct FixedOrderData {
    pub name: &'static str,
    pub order: &'static str,
    pub factors: &'static [(u64, u64)],
}

impl Sporadic {
    pub(crate) fn data(self) -> &'static FixedOrderData {
        use Sporadic::*;
        match self {
            M11 => &FixedOrderData {
                name: "M11",
                order: "7920",
                factors: &[(2, 4), (3, 2), (5, 1), (11, 1)],
            },
            M12 => &FixedOrderData {
                name: "M12",
                order: "95040",
                factors: &[(2, 6), (3, 3), (5, 1), (11, 1)],
            },
            M22 => &FixedOrderData {
                name: "M22",
                order: "443520",
                factors: &[(2, 7), (3, 2), (5, 1), (7, 1), (11, 1)],
            },
            M23 => &FixedOrderData {
                name: "M23",
                order: "10200960",
                factors: &[(2, 7), (3, 2), (5, 1), (7, 1), (11, 1), (23, 1)],
            },
            M24 => &FixedOrderData {
                name: "M24",
                order: "244823040",
                factors: &[(2, 10), (3, 3), (5, 1), (7, 1), (11, 1), (23, 1)],
            },
            J1 => &FixedOrderData {
                name: "J1",
                order: "175560",
                factors: &[(2, 3), (3, 1), (5, 1), (7, 1), (11, 1), (19, 1)],
            },
            J2 => &FixedOrderData {
                name: "J2",
                order: "604800",
                factors: &[(2, 7), (3, 3), (5, 2), (7, 1)],
            },
            J3 => &FixedOrderData {
                name: "J3",
                order: "50232960",
                factors: &[(2, 7), (3, 5), (5, 1), (17, 1), (19, 1)],
            },
            J4 => &FixedOrderData {
                name: "J4",
                order: "86775571046077562880",
                factors: &[
                    (2, 21),
                    (3, 3),
                    (5, 1),
                    (7, 1),
                    (11, 3),
                    (23, 1),
                    (29, 1),
                    (31, 1),
                    (37, 1),
                    (43, 1),
                ],
            },
            Co1 => &FixedOrderData {
                name: "Co1",
                order: "4157776806543360000",
                factors: &[(2, 21), (3, 9), (5, 4), (7, 2), (11, 1), (13, 1), (23, 1)],
            },
            Co2 => &FixedOrderData {
                name: "Co2",
                order: "42305421312000",
                factors: &[(2, 18), (3, 6), (5, 3), (7, 1), (11, 1), (23, 1)],
            },
            Co3 => &FixedOrderData {
                name: "Co3",
                order: "495766656000",
                factors: &[(2, 10), (3, 7), (5, 3), (7, 1), (11, 1), (23, 1)],
            },
            Fi22 => &FixedOrderData {
                name: "Fi22",
                order: "64561751654400",
                factors: &[(2, 17), (3, 9), (5, 2), (7, 1), (11, 1), (13, 1)],
            },
            Fi23 => &FixedOrderData {
                name: "Fi23",
                order: "4089470473293004800",
                factors: &[
                    (2, 18),
                    (3, 13),
                    (5, 2),
                    (7, 1),
                    (11, 1),
                    (13, 1),
                    (17, 1),
                    (23, 1),
                ],
            },
            Fi24 => &FixedOrderData {
                name: "Fi24'",
                order: "1255205709190661721292800",
                factors: &[
                    (2, 21),
                    (3, 16),
                    (5, 2),
                    (7, 3),
                    (11, 1),
                    (13, 1),
                    (17, 1),
                    (23, 1),
                    (29, 1),
                ],
            },
            HS => &FixedOrderData {
                name: "HS",
                order: "44352000",
                factors: &[(2, 9), (3, 2), (5, 3), (7, 1), (11, 1)],
            },
            McL => &FixedOrderData {
                name: "McL",
                order: "898128000",
                factors: &[(2, 7), (3, 6), (5, 3), (7, 1), (11, 1)],
            },
            He => &FixedOrderData {
                name: "He",
                order: "4030387200",
                factors: &[(2, 10), (3, 3), (5, 2), (7, 3), (17, 1)],
            },
            Ru => &FixedOrderData {
                name: "Ru",
                order: "145926144000",
                factors: &[(2, 14), (3, 3), (5, 3), (7, 1), (13, 1), (29, 1)],
            },
            Suz => &FixedOrderData {
                name: "Suz",
                order: "448345497600",
                factors: &[(2, 13), (3, 7), (5, 2), (7, 1), (11, 1), (13, 1)],
            },
            ON => &FixedOrderData {
                name: "ON",
                order: "460815505920",
                factors: &[(2, 9), (3, 4), (5, 1), (7, 3), (11, 1), (19, 1), (31, 1)],
            },
            HN => &FixedOrderData {
                name: "HN",
                order: "273030912000000",
                factors: &[(2, 14), (3, 6), (5, 6), (7, 1), (11, 1), (19, 1)],
            },
            Ly => &FixedOrderData {
                name: "Ly",
                order: "51765179004000000",
                factors: &[
                    (2, 8),
                    (3, 7),
                    (5, 6),
                    (7, 1),
                    (11, 1),
                    (31, 1),
                    (37, 1),
                    (67, 1),
                ],
            },
            Th => &FixedOrderData {
                name: "Th",
                order: "90745943887872000",
                factors: &[(2, 15), (3, 10), (5, 3), (7, 2), (13, 1), (19, 1), (31, 1)],
            },
            B => &FixedOrderData {
                name: "B",
                order: "4154781481226426191177580544000000",
                factors: &[
                    (2, 41),
                    (3, 13),
                    (5, 6),
                    (7, 2),
                    (11, 1),
                    (13, 1),
                    (17, 1),
                    (19, 1),
                    (23, 1),
                    (31, 1),
                    (47, 1),
                ],
            },
            M => &FixedOrderData {
                name: "M",
                order: "808017424794512875886459904961710757005754368000000000",
                factors: &[
                    (2, 46),
                    (3, 20),
                    (5, 9),
                    (7, 6),
                    (11, 2),
                    (13, 3),
                    (17, 1),
                    (19, 1),
                    (23, 1),
                    (29, 1),
                    (31, 1),
                    (41, 1),
                    (47, 1),
                    (59, 1),
                    (71, 1),
                ],
            },
        }
    }
}

/// The Tits group 2F4(2)' is kept outside the 2F4 family formula as a 27th
/// fixed-order entry, so it is always a candidate.
pub(crate) const TITS_DATA: FixedOrderData = FixedOrderData {
    name: "2F4(2)'",
    order: "17971200",
    factors: &[(2, 11), (3, 3), (5, 2), (13, 1)],
};

/// Families of groups of Lie type, classical and exceptional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LieFamily {
    /// L_n(q) = PSL_n(q)
    L,
    /// U_n(q) = PSU_n(q)
    U,
    /// S_2m(q) = PSp_2m(q)
    S,
    /// O_2m+1(q), odd q
    OOdd,
    /// O+_2m(q)
    OPlus,
    /// O-_2m(q)
    OMinus,
    G2,
    F4,
    E6,
    E7,
    E8,
    /// 2E6(q)
    TwE6,
    /// 3D4(q)
    ThD4,
    /// Sz(q) = 2B2(q), q = 2^k with odd k >= 3
    Sz,
    /// 2G2(q), q = 3^k with odd k >= 3
    TwG2,
    /// 2F4(q), q = 2^k with odd k >= 3
    TwF4,
}

pub const ALL_LIE_FAMILIES: [LieFamily; 16] = [
    LieFamily::L,
    LieFamily::U,
    LieFamily::S,
    LieFamily::OOdd,
    LieFamily::OPlus,
    LieFamily::OMinus,
    LieFamily::G2,
    LieFamily::F4,
    LieFamily::E6,
    LieFamily::E7,
    LieFamily::E8,
    LieFamily::TwE6,
    LieFamily::ThD4,
    LieFamily::Sz,
    LieFamily::TwG2,
    LieFamily::TwF4,
];

/// One factor q^exp - 1 (or q^exp + 1 when `plus`) of an order formula.
/// `divides` marks the rare divide-term, used to express the 3D4 factor
/// q^8 + q^4 + 1 as (q^12 - 1) / (q^4 - 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderTerm {
    pub exp: u32,
    pub plus: bool,
    pub divides: bool,
}

const fn mul(exp: u32, plus: bool) -> OrderTerm {
    OrderTerm {
        exp,
        plus,
        divides: false,
    }
}

const fn div(exp: u32, plus: bool) -> OrderTerm {
    OrderTerm {
        exp,
        plus,
        divides: true,
    }
}

/// Rule for the integer dividing the universal group order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CenterRule {
    Trivial,
    /// gcd(n, q - 1), n the Atlas subscript
    GcdSubscriptQMinus1,
    /// gcd(n, q + 1)
    GcdSubscriptQPlus1,
    /// gcd(2, q - 1)
    Gcd2QMinus1,
    /// gcd(4, q^(n/2) - 1)
    Gcd4QHalfMinus1,
    /// gcd(4, q^(n/2) + 1)
    Gcd4QHalfPlus1,
    /// gcd(3, q - 1)
    Gcd3QMinus1,
    /// gcd(3, q + 1)
    Gcd3QPlus1,
}

impl LieFamily {
    pub fn symbol(self) -> &'static str {
        match self {
            LieFamily::L => "L",
            LieFamily::U => "U",
            LieFamily::S => "S",
            LieFamily::OOdd => "O",
            LieFamily::OPlus => "O+",
            LieFamily::OMinus => "O-",
            LieFamily::G2 => "G2",
            LieFamily::F4 => "F4",
            LieFamily::E6 => "E6",
            LieFamily::E7 => "E7",
            LieFamily::E8 => "E8",
            LieFamily::TwE6 => "2E6",
            LieFamily::ThD4 => "3D4",
            LieFamily::Sz => "Sz",
            LieFamily::TwG2 => "2G2",
            LieFamily::TwF4 => "2F4",
        }
    }

    /// Whether the Atlas subscript is spelled out in names (classical
    /// families); exceptional families carry it in the symbol itself.
    pub fn is_classical(self) -> bool {
        matches!(
            self,
            LieFamily::L
                | LieFamily::U
                | LieFamily::S
                | LieFamily::OOdd
                | LieFamily::OPlus
                | LieFamily::OMinus
        )
    }

    /// Canonical subscript for the exceptional families.
    pub fn fixed_subscript(self) -> Option<u32> {
        match self {
            LieFamily::G2 => Some(2),
            LieFamily::F4 => Some(4),
            LieFamily::E6 => Some(6),
            LieFamily::E7 => Some(7),
            LieFamily::E8 => Some(8),
            LieFamily::TwE6 => Some(6),
            LieFamily::ThD4 => Some(4),
            LieFamily::Sz => Some(2),
            LieFamily::TwG2 => Some(2),
            LieFamily::TwF4 => Some(4),
            _ => None,
        }
    }

    /// Exponent a of the q^a factor of the order.
    pub fn q_exponent(self, n: u32) -> u64 {
        let n = n as u64;
        match self {
            LieFamily::L | LieFamily::U => n * (n - 1) / 2,
            LieFamily::S | LieFamily::OOdd => (n / 2) * (n / 2),
            LieFamily::OPlus | LieFamily::OMinus => (n / 2) * (n / 2 - 1),
            LieFamily::G2 => 6,
            LieFamily::F4 => 24,
            LieFamily::E6 | LieFamily::TwE6 => 36,
            LieFamily::E7 => 63,
            LieFamily::E8 => 120,
            LieFamily::ThD4 => 12,
            LieFamily::Sz => 2,
            LieFamily::TwG2 => 3,
            LieFamily::TwF4 => 12,
        }
    }

    /// The q^d -+ 1 terms of the order formula, for Atlas subscript n.
    pub fn terms(self, n: u32) -> Vec<OrderTerm> {
        match self {
            LieFamily::L => (2..=n).map(|i| mul(i, false)).collect(),
            LieFamily::U => (2..=n).map(|i| mul(i, i % 2 == 1)).collect(),
            LieFamily::S | LieFamily::OOdd => (1..=n / 2).map(|i| mul(2 * i, false)).collect(),
            LieFamily::OPlus => {
                let m = n / 2;
                let mut t = vec![mul(m, false)];
                t.extend((1..m).map(|i| mul(2 * i, false)));
                t
            }
            LieFamily::OMinus => {
                let m = n / 2;
                let mut t = vec![mul(m, true)];
                t.extend((1..m).map(|i| mul(2 * i, false)));
                t
            }
            LieFamily::G2 => vec![mul(6, false), mul(2, false)],
            LieFamily::F4 => vec![mul(12, false), mul(8, false), mul(6, false), mul(2, false)],
            LieFamily::E6 => vec![
                mul(12, false),
                mul(9, false),
                mul(8, false),
                mul(6, false),
                mul(5, false),
                mul(2, false),
            ],
            LieFamily::E7 => vec![
                mul(18, false),
                mul(14, false),
                mul(12, false),
                mul(10, false),
                mul(8, false),
                mul(6, false),
                mul(2, false),
            ],
            LieFamily::E8 => vec![
                mul(30, false),
                mul(24, false),
                mul(20, false),
                mul(18, false),
                mul(14, false),
                mul(12, false),
                mul(8, false),
                mul(2, false),
            ],
            LieFamily::TwE6 => vec![
                mul(12, false),
                mul(9, true),
                mul(8, false),
                mul(6, false),
                mul(5, true),
                mul(2, false),
            ],
            // q^8 + q^4 + 1 = (q^12 - 1) / (q^4 - 1)
            LieFamily::ThD4 => vec![mul(12, false), div(4, false), mul(6, false), mul(2, false)],
            LieFamily::Sz => vec![mul(2, true), mul(1, false)],
            LieFamily::TwG2 => vec![mul(3, true), mul(1, false)],
            LieFamily::TwF4 => vec![mul(6, true), mul(4, false), mul(3, true), mul(1, false)],
        }
    }

    pub fn center_rule(self) -> CenterRule {
        match self {
            LieFamily::L => CenterRule::GcdSubscriptQMinus1,
            LieFamily::U => CenterRule::GcdSubscriptQPlus1,
            LieFamily::S | LieFamily::OOdd => CenterRule::Gcd2QMinus1,
            LieFamily::OPlus => CenterRule::Gcd4QHalfMinus1,
            LieFamily::OMinus => CenterRule::Gcd4QHalfPlus1,
            LieFamily::E6 => CenterRule::Gcd3QMinus1,
            LieFamily::TwE6 => CenterRule::Gcd3QPlus1,
            LieFamily::E7 => CenterRule::Gcd2QMinus1,
            _ => CenterRule::Trivial,
        }
    }

    /// Rank of the ambient untwisted root system; this is the quantity the
    /// enumeration bound max{8, t_p} applies to.
    pub fn ambient_rank(self, n: u32) -> u32 {
        match self {
            LieFamily::L | LieFamily::U => n - 1,
            LieFamily::S | LieFamily::OOdd | LieFamily::OPlus | LieFamily::OMinus => n / 2,
            LieFamily::G2 | LieFamily::Sz | LieFamily::TwG2 => 2,
            LieFamily::F4 | LieFamily::ThD4 | LieFamily::TwF4 => 4,
            LieFamily::E6 | LieFamily::TwE6 => 6,
            LieFamily::E7 => 7,
            LieFamily::E8 => 8,
        }
    }

    /// Smallest structurally meaningful subscript and the subscript stride.
    pub fn subscript_start_step(self) -> (u32, u32) {
        match self {
            LieFamily::L => (2, 1),
            LieFamily::U => (3, 1),
            LieFamily::S => (4, 2),
            LieFamily::OOdd => (7, 2),
            LieFamily::OPlus | LieFamily::OMinus => (8, 2),
            other => (other.fixed_subscript().expect("exceptional"), 1),
        }
    }

    /// Subscripts with ambient rank at most `rank_max`, in increasing order.
    pub fn subscripts_up_to_rank(self, rank_max: u32) -> impl Iterator<Item = u32> {
        let (start, step) = self.subscript_start_step();
        let end = if let Some(fixed) = self.fixed_subscript() {
            if self.ambient_rank(fixed) <= rank_max {
                fixed
            } else {
                0
            }
        } else {
            match self {
                LieFamily::L | LieFamily::U => rank_max + 1,
                LieFamily::S | LieFamily::OPlus | LieFamily::OMinus => 2 * rank_max,
                LieFamily::OOdd => 2 * rank_max + 1,
                _ => unreachable!(),
            }
        };
        (start..=end).step_by(step as usize)
    }
}

/// Parameters of one group of Lie type: family, Atlas subscript n, defining
/// characteristic p and field exponent k (so the field has order p^k).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieId {
    pub family: LieFamily,
    pub n: u32,
    pub p: u64,
    pub k: u32,
}

impl LieId {
    /// The field size q = p^k when it fits in u64.
    pub fn q(&self) -> Option<u64> {
        self.p.checked_pow(self.k)
    }

    fn q_is(&self, value: u64) -> bool {
        self.q() == Some(value)
    }
}

/// Identifier of one candidate simple group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupId {
    Alternating(u32),
    Sporadic(Sporadic),
    Tits,
    Lie(LieId),
}

impl GroupId {
    pub fn lie(family: LieFamily, n: u32, p: u64, k: u32) -> Self {
        GroupId::Lie(LieId { family, n, p, k })
    }

    /// Short family tag used in machine-readable output.
    pub fn family_tag(&self) -> &'static str {
        match self {
            GroupId::Alternating(_) => "Alt",
            GroupId::Sporadic(_) => "Spor",
            GroupId::Tits => "Tits",
            GroupId::Lie(id) => id.family.symbol(),
        }
    }

    pub fn is_alternating(&self) -> bool {
        matches!(self, GroupId::Alternating(_))
    }

    /// Structural validity: the parameters describe a group the formulas
    /// apply to (not necessarily simple or canonical).
    pub fn validate(&self) -> Result<(), SpectrumError> {
        let fail = |msg: String| Err(SpectrumError::InvalidGroup(msg));
        match self {
            GroupId::Alternating(n) => {
                if *n < 3 {
                    return fail(format!("alternating degree {n} is below 3"));
                }
            }
            GroupId::Sporadic(_) | GroupId::Tits => {}
            GroupId::Lie(id) => {
                if !primes::is_prime(id.p) {
                    return fail(format!("characteristic {} is not prime", id.p));
                }
                if id.k == 0 {
                    return fail("field exponent k must be at least 1".into());
                }
                let n = id.n;
                let ok = match id.family {
                    LieFamily::L => n >= 2,
                    LieFamily::U => n >= 3,
                    LieFamily::S => n >= 4 && n % 2 == 0,
                    LieFamily::OOdd => n >= 7 && n % 2 == 1,
                    LieFamily::OPlus | LieFamily::OMinus => n >= 8 && n % 2 == 0,
                    family => Some(n) == family.fixed_subscript(),
                };
                if !ok {
                    return fail(format!(
                        "subscript {n} is not valid for family {}",
                        id.family.symbol()
                    ));
                }
                match id.family {
                    LieFamily::Sz | LieFamily::TwF4 => {
                        if id.p != 2 || id.k % 2 == 0 {
                            return fail(format!(
                                "{} requires q = 2^k with odd k",
                                id.family.symbol()
                            ));
                        }
                    }
                    LieFamily::TwG2 => {
                        if id.p != 3 || id.k % 2 == 0 {
                            return fail("2G2 requires q = 3^k with odd k".into());
                        }
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&display_name(self))
    }
}

/// Structural Atlas-style name, defined for every valid id (canonical or
/// not). Field sizes q = p^k above 100 with k >= 2 are written `p^k`.
pub fn display_name(id: &GroupId) -> String {
    match id {
        GroupId::Alternating(n) => format!("A{n}"),
        GroupId::Sporadic(s) => s.data().name.to_string(),
        GroupId::Tits => TITS_DATA.name.to_string(),
        GroupId::Lie(id) => {
            let field = if id.k == 1 {
                id.p.to_string()
            } else {
                match id.q() {
                    Some(q) if q <= 100 => q.to_string(),
                    _ => format!("{}^{}", id.p, id.k),
                }
            };
            if id.family.is_classical() {
                format!("{}{}({})", id.family.symbol(), id.n, field)
            } else {
                format!("{}({})", id.family.symbol(), field)
            }
        }
    }
}

/// Does the id name a simple group, and is it the canonical representative
/// of its isomorphism class?
///
/// Non-simple parameter combinations and the small exceptional isomorphisms
/// (A5 = L2(4) = L2(5), L2(7) = L3(2), A6 = L2(9), A8 = L4(2),
/// U4(2) = S4(3), and O_2m+1(q) = S_2m(q) for even q) are resolved here so
/// every isomorphism type is counted exactly once. The {U4(2), S4(3)} class
/// canonicalizes to S4(3).
pub fn is_admissible(id: &GroupId) -> bool {
    if id.validate().is_err() {
        return false;
    }
    match id {
        GroupId::Alternating(n) => *n >= 5,
        GroupId::Sporadic(_) | GroupId::Tits => true,
        GroupId::Lie(lie) => {
            let n = lie.n;
            match lie.family {
                LieFamily::L => {
                    // L2(2), L2(3) are solvable; L2(4), L2(5), L2(9), L3(2),
                    // L4(2) are aliases of A5, A6, L2(7), A8
                    !(n == 2 && (lie.q_is(2) || lie.q_is(3) || lie.q_is(4) || lie.q_is(5) || lie.q_is(9)))
                        && !(n == 3 && lie.q_is(2))
                        && !(n == 4 && lie.q_is(2))
                }
                LieFamily::U => !(n == 3 && lie.q_is(2)) && !(n == 4 && lie.q_is(2)),
                LieFamily::S => !(n == 4 && lie.q_is(2)),
                LieFamily::OOdd => lie.p != 2,
                LieFamily::OPlus | LieFamily::OMinus => true,
                LieFamily::G2 => !lie.q_is(2),
                LieFamily::Sz => !lie.q_is(2),
                LieFamily::TwG2 => !lie.q_is(3),
                LieFamily::TwF4 => !lie.q_is(2),
                _ => true,
            }
        }
    }
}

/// Canonical representative of the isomorphism class of a simple-but-not-
/// canonical id, when there is one.
pub fn alias_canonical(id: &GroupId) -> Option<GroupId> {
    match id {
        GroupId::Lie(lie) => match (lie.family, lie.n) {
            (LieFamily::L, 2) if lie.q_is(4) || lie.q_is(5) => Some(GroupId::Alternating(5)),
            (LieFamily::L, 2) if lie.q_is(9) => Some(GroupId::Alternating(6)),
            (LieFamily::L, 3) if lie.q_is(2) => Some(GroupId::lie(LieFamily::L, 2, 7, 1)),
            (LieFamily::L, 4) if lie.q_is(2) => Some(GroupId::Alternating(8)),
            (LieFamily::U, 4) if lie.q_is(2) => Some(GroupId::lie(LieFamily::S, 4, 3, 1)),
            (LieFamily::OOdd, n) if lie.p == 2 => {
                Some(GroupId::lie(LieFamily::S, n - 1, lie.p, lie.k))
            }
            _ => None,
        },
        _ => None,
    }
}

/// Equivalent ids of a canonical representative (its exceptional-isomorphism
/// class, excluding itself).
pub fn aliases(id: &GroupId) -> Vec<GroupId> {
    match id {
        GroupId::Alternating(5) => vec![
            GroupId::lie(LieFamily::L, 2, 2, 2),
            GroupId::lie(LieFamily::L, 2, 5, 1),
        ],
        GroupId::Alternating(6) => vec![GroupId::lie(LieFamily::L, 2, 3, 2)],
        GroupId::Alternating(8) => vec![GroupId::lie(LieFamily::L, 4, 2, 1)],
        GroupId::Lie(lie) => match (lie.family, lie.n) {
            (LieFamily::L, 2) if lie.q_is(7) => vec![GroupId::lie(LieFamily::L, 3, 2, 1)],
            (LieFamily::S, 4) if lie.q_is(3) => vec![GroupId::lie(LieFamily::U, 4, 2, 1)],
            (LieFamily::S, n) if lie.p == 2 && n >= 6 => {
                vec![GroupId::lie(LieFamily::OOdd, n + 1, lie.p, lie.k)]
            }
            _ => vec![],
        },
        _ => vec![],
    }
}

/// Atlas-style name of a canonical simple group.
pub fn canonical_name(id: &GroupId) -> Result<String, SpectrumError> {
    if !is_admissible(id) {
        return Err(SpectrumError::NotCanonical(display_name(id)));
    }
    Ok(display_name(id))
}

/// Integer dividing the universal group order (the Schur-center divisor),
/// evaluated without materialising q.
pub fn center_divisor(id: &LieId) -> u64 {
    let gcd4 = |x: u64| match x % 4 {
        0 => 4,
        2 => 2,
        _ => 1,
    };
    match id.family.center_rule() {
        CenterRule::Trivial => 1,
        CenterRule::Gcd2QMinus1 => {
            if id.p == 2 {
                1
            } else {
                2
            }
        }
        CenterRule::Gcd3QMinus1 => {
            if primes::powmod(id.p, id.k as u64, 3) == 1 {
                3
            } else {
                1
            }
        }
        CenterRule::Gcd3QPlus1 => {
            if (primes::powmod(id.p, id.k as u64, 3) + 1) % 3 == 0 {
                3
            } else {
                1
            }
        }
        CenterRule::GcdSubscriptQMinus1 => {
            let n = id.n as u64;
            let q_mod = primes::powmod(id.p, id.k as u64, n);
            n.gcd(&((q_mod + n - 1) % n))
        }
        CenterRule::GcdSubscriptQPlus1 => {
            let n = id.n as u64;
            let q_mod = primes::powmod(id.p, id.k as u64, n);
            n.gcd(&((q_mod + 1) % n))
        }
        CenterRule::Gcd4QHalfMinus1 => {
            let m = (id.n / 2) as u64;
            gcd4((primes::powmod(id.p, id.k as u64 * m, 4) + 3) % 4)
        }
        CenterRule::Gcd4QHalfPlus1 => {
            let m = (id.n / 2) as u64;
            gcd4((primes::powmod(id.p, id.k as u64 * m, 4) + 1) % 4)
        }
    }
}

/// Exact order of the group, including center division. Works for any
/// structurally valid id, simple or not.
pub fn group_order(id: &GroupId) -> Result<BigUint, SpectrumError> {
    id.validate()?;
    match id {
        GroupId::Alternating(n) => {
            let mut acc = BigUint::one();
            for i in 2..=*n as u64 {
                acc *= i;
            }
            Ok(acc / 2u32)
        }
        GroupId::Sporadic(s) => Ok(parse_decimal(s.data().order)),
        GroupId::Tits => Ok(parse_decimal(TITS_DATA.order)),
        GroupId::Lie(lie) => {
            let q = BigUint::from(lie.p).pow(lie.k);
            let mut acc = q.pow(u32::try_from(lie.family.q_exponent(lie.n)).expect("q exponent"));
            let terms = lie.family.terms(lie.n);
            for term in terms.iter().filter(|t| !t.divides) {
                acc *= term_value(&q, term);
            }
            for term in terms.iter().filter(|t| t.divides) {
                let value = term_value(&q, term);
                let (quot, rem) = acc.div_rem(&value);
                assert!(rem.is_zero(), "divide-term left a remainder in {id}");
                acc = quot;
            }
            let center = center_divisor(lie);
            let (quot, rem) = acc.div_rem(&BigUint::from(center));
            assert!(rem.is_zero(), "center divisor left a remainder in {id}");
            Ok(quot)
        }
    }
}

fn term_value(q: &BigUint, term: &OrderTerm) -> BigUint {
    let power = q.pow(term.exp);
    if term.plus {
        power + 1u32
    } else {
        power - 1u32
    }
}

fn parse_decimal(digits: &str) -> BigUint {
    digits.parse().expect("static decimal literal")
}

/// Canonical name, alias set, spectrum and factored order of one simple
/// group: the unit of all analytics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRecord {
    pub id: GroupId,
    pub canonical_name: String,
    pub aliases: Vec<GroupId>,
    pub spectrum: Vec<u64>,
    pub max_prime: u64,
    pub spectrum_size: usize,
    pub order_factors: FactoredOrder,
}

impl GroupRecord {
    /// Rebuilds a record from its identity and exact factored order. The
    /// factors must multiply to the full group order (leftover 1); all
    /// derived fields (name, aliases, spectrum, extremes) follow from them.
    pub fn from_factors(id: GroupId, factors: BTreeMap<u64, u64>) -> Self {
        let spectrum: Vec<u64> = factors.keys().copied().collect();
        let max_prime = *spectrum.last().expect("nonempty spectrum");
        GroupRecord {
            canonical_name: display_name(&id),
            aliases: aliases(&id),
            spectrum_size: spectrum.len(),
            max_prime,
            spectrum,
            order_factors: FactoredOrder {
                factors,
                leftover: BigUint::one(),
            },
            id,
        }
    }

    pub fn is_alternating(&self) -> bool {
        self.id.is_alternating()
    }

    /// Ordering key used for all deterministic output.
    pub fn sort_key(&self) -> (u64, usize, &str) {
        (self.max_prime, self.spectrum_size, &self.canonical_name)
    }

    /// Exact bit length of the group order, recomputed from the factors.
    pub fn order_bits(&self) -> u64 {
        self.order_factors.reconstruct().bits()
    }
}

/// Legendre's formula: exponent of prime r in n!.
pub(crate) fn factorial_valuation(n: u64, r: u64) -> u64 {
    let mut total = 0;
    let mut power = r;
    loop {
        total += n / power;
        match power.checked_mul(r) {
            Some(next) if next <= n => power = next,
            _ => break,
        }
    }
    total
}

/// Evaluates whether pi(G) is contained in `pi`, factoring each multiplicand
/// of the order formula over `pi` and early-exiting on the first non-smooth
/// term. Returns the full record on success, `None` on rejection.
///
/// Ids that are simple but not canonical are recorded under their canonical
/// representative.
pub fn spectrum(id: &GroupId, pi: &PrimeSet) -> Result<Option<GroupRecord>, SpectrumError> {
    id.validate()?;
    let canonical = alias_canonical(id).unwrap_or(*id);
    match id {
        GroupId::Alternating(n) => {
            let n = *n as u64;
            if n > pi.prefix_limit() {
                return Ok(None);
            }
            let mut factors = BTreeMap::new();
            for &r in pi.primes() {
                if r > n {
                    break;
                }
                let mut e = factorial_valuation(n, r);
                if r == 2 {
                    e -= 1; // |A_n| = n! / 2
                }
                if e > 0 {
                    factors.insert(r, e);
                }
            }
            Ok(Some(GroupRecord::from_factors(canonical, factors)))
        }
        GroupId::Sporadic(_) | GroupId::Tits => {
            let data = match id {
                GroupId::Sporadic(s) => s.data(),
                _ => &TITS_DATA,
            };
            if data.factors.iter().any(|&(r, _)| !pi.contains(r)) {
                return Ok(None);
            }
            Ok(Some(GroupRecord::from_factors(
                canonical,
                data.factors.iter().copied().collect(),
            )))
        }
        GroupId::Lie(lie) => {
            if !pi.contains(lie.p) {
                return Ok(None);
            }
            let q = BigUint::from(lie.p).pow(lie.k);
            let mut factors = BTreeMap::new();
            factors.insert(lie.p, lie.family.q_exponent(lie.n) * lie.k as u64);
            let terms = lie.family.terms(lie.n);
            if terms.iter().any(|t| t.divides) {
                // divide-terms cancel prime factors of their companions, so
                // smoothness belongs to the quotient, not the raw terms
                let mut numerator = BigUint::one();
                let mut denominator = BigUint::one();
                for term in &terms {
                    if term.divides {
                        denominator *= term_value(&q, term);
                    } else {
                        numerator *= term_value(&q, term);
                    }
                }
                let (quot, rem) = numerator.div_rem(&denominator);
                assert!(rem.is_zero(), "divide-term left a remainder in {id}");
                let factored = crate::primes::constrained_factor(&quot, pi);
                if !factored.is_smooth() {
                    return Ok(None);
                }
                for (r, e) in factored.factors {
                    *factors.entry(r).or_insert(0) += e;
                }
            } else {
                for term in &terms {
                    let factored = crate::primes::constrained_factor(&term_value(&q, term), pi);
                    if !factored.is_smooth() {
                        return Ok(None);
                    }
                    for (r, e) in factored.factors {
                        *factors.entry(r).or_insert(0) += e;
                    }
                }
            }
            let center = crate::primes::constrained_factor(
                &BigUint::from(center_divisor(lie)),
                pi,
            );
            assert!(
                center.is_smooth(),
                "center divisor of {id} not smooth although the order is"
            );
            subtract_factors(&mut factors, &center.factors, id);
            factors.retain(|_, e| *e > 0);
            Ok(Some(GroupRecord::from_factors(canonical, factors)))
        }
    }
}

fn subtract_factors(acc: &mut BTreeMap<u64, u64>, sub: &BTreeMap<u64, u64>, id: &GroupId) {
    for (&r, &e) in sub {
        let slot = acc
            .get_mut(&r)
            .unwrap_or_else(|| panic!("exponent of {r} went negative in {id}"));
        assert!(*slot >= e, "exponent of {r} went negative in {id}");
        *slot -= e;
    }
}
