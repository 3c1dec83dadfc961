//! Named poset families, with the block decomposition each one uses for
//! its recurrence.

use std::fmt;
use std::str::FromStr;

use crate::poset::{Poset, PosetError, Relation};
use crate::recurrence::{Attachment, RecurrenceSpec};

#[derive(Clone, Debug)]
pub enum Family {
    Chain,
    Antichain,
    Diamond,
    Zigzag,
    ThreeRowed,
    TwoRowedDd,
    Multicube,
    /// `P_R^n` for a user-supplied block and relation.
    RPower {
        block: Poset,
        glue: Relation,
    },
}

impl Family {
    pub const NAMES: [&'static str; 8] = [
        "chain",
        "antichain",
        "diamond",
        "zigzag",
        "three_rowed",
        "two_rowed_dd",
        "multicube",
        "rpower",
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Chain => "chain",
            Family::Antichain => "antichain",
            Family::Diamond => "diamond",
            Family::Zigzag => "zigzag",
            Family::ThreeRowed => "three_rowed",
            Family::TwoRowedDd => "two_rowed_dd",
            Family::Multicube => "multicube",
            Family::RPower { .. } => "rpower",
        }
    }

    /// The `n`-th member. The diamond ignores `n`.
    pub fn poset(&self, n: usize) -> Result<Poset, PosetError> {
        if n == 0 {
            return Err(PosetError::ZeroCopies);
        }
        match self {
            Family::Diamond => Ok(diamond()),
            Family::TwoRowedDd => Ok(two_rowed_dd(n)),
            _ => {
                let spec = self.recurrence().expect("block families have a recurrence");
                Ok(Poset::power(&spec.block, &spec.glue, n)?.poset)
            }
        }
    }

    /// Block decomposition, and how many copies the `n`-th member has.
    pub fn recurrence(&self) -> Option<RecurrenceSpec> {
        let spec = match self {
            Family::Chain => {
                let one = Poset::from_u32(&[1], &[]).unwrap();
                RecurrenceSpec::power(one, Relation::from_u32(&[(1, 1)]))
            }
            Family::Antichain => {
                RecurrenceSpec::power(Poset::from_u32(&[1], &[]).unwrap(), Relation::empty())
            }
            Family::Diamond => return None,
            Family::Zigzag => RecurrenceSpec::power(
                Poset::from_u32(&[1, 2], &[(2, 1)]).unwrap(),
                Relation::from_u32(&[(2, 1)]),
            ),
            Family::ThreeRowed => RecurrenceSpec::power(
                Poset::from_u32(&[1, 2, 3], &[(1, 2), (1, 3)]).unwrap(),
                Relation::from_u32(&[(2, 2), (3, 3)]),
            ),
            Family::TwoRowedDd => {
                let pair = Poset::from_u32(&[1, 2], &[]).unwrap();
                let one = Poset::from_u32(&[1], &[]).unwrap();
                RecurrenceSpec {
                    block: pair.clone(),
                    glue: Relation::full(&pair, &pair),
                    seed: Some(Attachment {
                        poset: one.clone(),
                        rel: Relation::full(&one, &pair),
                    }),
                    tail: Some(Attachment {
                        poset: one.clone(),
                        rel: Relation::full(&pair, &one),
                    }),
                }
            }
            Family::Multicube => RecurrenceSpec::power(
                diamond(),
                Relation::from_u32(&[(1, 1), (2, 2), (3, 3), (4, 4)]),
            ),
            Family::RPower { block, glue } => RecurrenceSpec::power(block.clone(), glue.clone()),
        };
        Some(spec)
    }

    /// Number of block copies in the `n`-th member. The 2-rowed posets put
    /// `n - 1` copies between a bottom and a top element.
    pub fn copies(&self, n: usize) -> usize {
        match self {
            Family::TwoRowedDd => n - 1,
            _ => n,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    /// Parses every name except `rpower`, which needs a block.
    fn from_str(s: &str) -> Result<Family, String> {
        Ok(match s {
            "chain" => Family::Chain,
            "antichain" => Family::Antichain,
            "diamond" => Family::Diamond,
            "zigzag" => Family::Zigzag,
            "three_rowed" => Family::ThreeRowed,
            "two_rowed_dd" => Family::TwoRowedDd,
            "multicube" => Family::Multicube,
            "rpower" => return Err("rpower needs a block poset file".into()),
            other => {
                return Err(format!(
                    "unknown family `{other}` (expected one of {})",
                    Family::NAMES.join(", ")
                ))
            }
        })
    }
}

/// `1 ⋖ 2, 1 ⋖ 3, 2 ⋖ 4, 3 ⋖ 4`.
pub fn diamond() -> Poset {
    Poset::from_u32(&[1, 2, 3, 4], &[(1, 2), (1, 3), (2, 4), (3, 4)]).unwrap()
}

/// Two rows `2, 4, 6, ...` and `3, 5, 7, ...` with every element of one
/// column below both elements of the next, a bottom `1` below the first
/// column and a top `2n` above the last.
pub fn two_rowed_dd(n: usize) -> Poset {
    let n = n as u32;
    let els: Vec<u32> = (1..=2 * n).collect();
    if n == 1 {
        return Poset::from_u32(&els, &[(1, 2)]).unwrap();
    }
    let mut cov = vec![(1, 2), (1, 3), (2 * n - 2, 2 * n), (2 * n - 1, 2 * n)];
    for k in 1..n - 1 {
        let (lo, hi) = (2 * k, 2 * k + 1);
        cov.extend([(lo, lo + 2), (lo, hi + 2), (hi, lo + 2), (hi, hi + 2)]);
    }
    Poset::from_u32(&els, &cov).unwrap()
}
