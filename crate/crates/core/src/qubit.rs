//! Which-path environmental qubit.
//!
//! The qubit has states 1 (upper slit, also the default) and 2 (lower slit).
//! Its behavior decides which composite transitions
//! `(i', e') -> (i, e)` are admissible; admissibility never depends on the
//! screen index `i`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QubitBehavior {
    /// Qubit never interacts: e' = e = 1.
    None,
    /// Qubit records the slit and keeps it: e' tracks the slit, e = e'.
    Remembers,
    /// Qubit records the slit and then reverts: e' tracks the slit, e = 1.
    Forgets,
}

impl QubitBehavior {
    pub const ALL: [QubitBehavior; 3] = [
        QubitBehavior::None,
        QubitBehavior::Remembers,
        QubitBehavior::Forgets,
    ];

    pub fn name(self) -> &'static str {
        match self {
            QubitBehavior::None => "none",
            QubitBehavior::Remembers => "remembers",
            QubitBehavior::Forgets => "forgets",
        }
    }
}

impl fmt::Display for QubitBehavior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for QubitBehavior {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "none" => Ok(QubitBehavior::None),
            "remembers" => Ok(QubitBehavior::Remembers),
            "forgets" => Ok(QubitBehavior::Forgets),
            other => Err(Error::InvalidConfig(format!(
                "unknown qubit behavior `{other}`"
            ))),
        }
    }
}

/// Qubit state a perfect detector writes for an electron in the given slit.
#[inline]
fn detected_state(in_lower_slit: bool) -> u8 {
    if in_lower_slit {
        2
    } else {
        1
    }
}

/// Admissibility with the slit already resolved. `e_prime` and `e` are 1 or 2.
#[inline]
pub fn admits(behavior: QubitBehavior, in_lower_slit: bool, e_prime: u8, e: u8) -> bool {
    match behavior {
        QubitBehavior::None => e_prime == 1 && e == 1,
        QubitBehavior::Remembers => e_prime == detected_state(in_lower_slit) && e == e_prime,
        QubitBehavior::Forgets => e_prime == detected_state(in_lower_slit) && e == 1,
    }
}

fn check_state(what: &'static str, value: u8) -> Result<()> {
    if value == 1 || value == 2 {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange {
            what,
            index: value as usize,
            max: 2,
        })
    }
}

/// Whether the composite transition from slit position `i_prime` (1-based)
/// with wall qubit state `e_prime` to screen qubit state `e` is allowed.
pub fn is_allowed(
    behavior: QubitBehavior,
    n: usize,
    i_prime: usize,
    e_prime: u8,
    e: u8,
) -> Result<bool> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidConfig(format!(
            "n must be even and at least 2, got {n}"
        )));
    }
    if i_prime == 0 || i_prime > n {
        return Err(Error::IndexOutOfRange {
            what: "slit position",
            index: i_prime,
            max: n,
        });
    }
    check_state("wall qubit state", e_prime)?;
    check_state("screen qubit state", e)?;
    Ok(admits(behavior, i_prime <= n / 2, e_prime, e))
}

/// Materialised admissibility structure of the composite transition matrix.
///
/// Only the `(i', e', e)` table is stored; the full `2n × 2n` matrix repeats
/// it on every screen row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMask {
    behavior: QubitBehavior,
    n: usize,
    // index: ((i' - 1) * 2 + (e' - 1)) * 2 + (e - 1)
    table: Vec<bool>,
}

impl TransitionMask {
    pub fn behavior(&self) -> QubitBehavior {
        self.behavior
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn slot(i_prime: usize, e_prime: u8, e: u8) -> usize {
        ((i_prime - 1) * 2 + (e_prime as usize - 1)) * 2 + (e as usize - 1)
    }

    /// Entry `(i, e), (i', e')` of the composite matrix, all indices 1-based.
    pub fn allowed(&self, i: usize, e: u8, i_prime: usize, e_prime: u8) -> Result<bool> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange {
                what: "screen position",
                index: i,
                max: self.n,
            });
        }
        if i_prime == 0 || i_prime > self.n {
            return Err(Error::IndexOutOfRange {
                what: "slit position",
                index: i_prime,
                max: self.n,
            });
        }
        check_state("wall qubit state", e_prime)?;
        check_state("screen qubit state", e)?;
        Ok(self.table[Self::slot(i_prime, e_prime, e)])
    }

    /// Number of admissible `(e', e)` pairs for slit position `i_prime`.
    pub fn admissible_pairs(&self, i_prime: usize) -> usize {
        let start = Self::slot(i_prime, 1, 1);
        self.table[start..start + 4].iter().filter(|&&b| b).count()
    }

    /// Renders the full composite matrix. Rows are screen states `(i, e)`,
    /// columns wall states `(i', e')`, both ordered as the e = 1 block then
    /// the e = 2 block with positions ascending. `#` marks an allowed cell.
    pub fn to_text(&self) -> String {
        let n = self.n;
        let mut out = String::with_capacity((2 * n + 1) * (2 * n + 1) + 32);
        out.push_str(&format!("behavior={} n={}\n", self.behavior, n));
        for e in 1..=2u8 {
            for _i in 1..=n {
                for e_prime in 1..=2u8 {
                    for i_prime in 1..=n {
                        let cell = self.table[Self::slot(i_prime, e_prime, e)];
                        out.push(if cell { '#' } else { '.' });
                    }
                }
                out.push('\n');
            }
        }
        out
    }

    /// Parses the text produced by [`TransitionMask::to_text`]. The table is
    /// read from the first screen row of each qubit block and every other row
    /// must repeat it.
    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidConfig(format!("mask text: {msg}"));
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| bad("missing header"))?;
        let mut behavior = None;
        let mut n = None;
        for field in header.split_whitespace() {
            match field.split_once('=') {
                Some(("behavior", v)) => behavior = Some(v.parse::<QubitBehavior>()?),
                Some(("n", v)) => n = Some(v.parse::<usize>().map_err(|_| bad("bad n"))?),
                _ => return Err(bad("unexpected header field")),
            }
        }
        let behavior = behavior.ok_or_else(|| bad("header lacks behavior"))?;
        let n = n.ok_or_else(|| bad("header lacks n"))?;
        if n < 2 || !n.is_multiple_of(2) {
            return Err(bad("n must be even and at least 2"));
        }
        let rows: Vec<&str> = lines.collect();
        if rows.len() != 2 * n {
            return Err(bad("wrong number of rows"));
        }
        let mut table = vec![false; 4 * n];
        for (r, row) in rows.iter().enumerate() {
            let e = (r / n + 1) as u8;
            let cells: Vec<char> = row.chars().collect();
            if cells.len() != 2 * n {
                return Err(bad("wrong number of columns"));
            }
            for (c, ch) in cells.into_iter().enumerate() {
                let e_prime = (c / n + 1) as u8;
                let i_prime = c % n + 1;
                let cell = match ch {
                    '#' => true,
                    '.' => false,
                    _ => return Err(bad("unexpected character")),
                };
                let slot = Self::slot(i_prime, e_prime, e);
                if r % n == 0 {
                    table[slot] = cell;
                } else if table[slot] != cell {
                    return Err(bad("rows within a qubit block differ"));
                }
            }
        }
        Ok(Self { behavior, n, table })
    }
}

pub fn build_mask(behavior: QubitBehavior, n: usize) -> Result<TransitionMask> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidConfig(format!(
            "n must be even and at least 2, got {n}"
        )));
    }
    let mut table = vec![false; 4 * n];
    for i_prime in 1..=n {
        for e_prime in 1..=2u8 {
            for e in 1..=2u8 {
                table[TransitionMask::slot(i_prime, e_prime, e)] =
                    admits(behavior, i_prime <= n / 2, e_prime, e);
            }
        }
    }
    Ok(TransitionMask { behavior, n, table })
}

/// True iff some screen qubit state receives amplitude from both slits.
pub fn interference_possible(mask: &TransitionMask) -> bool {
    let n = mask.n;
    (1..=2u8).any(|e| {
        let fed_by = |range: std::ops::RangeInclusive<usize>| {
            range.into_iter().any(|i_prime| {
                (1..=2u8).any(|e_prime| mask.table[TransitionMask::slot(i_prime, e_prime, e)])
            })
        };
        fed_by(1..=n / 2) && fed_by(n / 2 + 1..=n)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listing_examples() {
        assert!(is_allowed(QubitBehavior::None, 4, 3, 1, 1).unwrap());
        assert!(is_allowed(QubitBehavior::Remembers, 4, 1, 2, 2).unwrap());
        assert!(!is_allowed(QubitBehavior::Forgets, 4, 1, 2, 2).unwrap());
        assert!(!is_allowed(QubitBehavior::Remembers, 4, 4, 2, 2).unwrap());
    }

    #[test]
    fn out_of_range_indices() {
        assert!(is_allowed(QubitBehavior::None, 4, 0, 1, 1).is_err());
        assert!(is_allowed(QubitBehavior::None, 4, 5, 1, 1).is_err());
        assert!(is_allowed(QubitBehavior::None, 4, 1, 3, 1).is_err());
        assert!(is_allowed(QubitBehavior::None, 4, 1, 1, 0).is_err());
        assert!(is_allowed(QubitBehavior::None, 5, 1, 1, 1).is_err());
        let mask = build_mask(QubitBehavior::None, 4).unwrap();
        assert!(mask.allowed(5, 1, 1, 1).is_err());
    }

    #[test]
    fn none_mask_counts() {
        let mask = build_mask(QubitBehavior::None, 4).unwrap();
        for i in 1..=4 {
            let mut count = 0;
            for e in 1..=2 {
                for i_prime in 1..=4 {
                    for e_prime in 1..=2 {
                        if mask.allowed(i, e, i_prime, e_prime).unwrap() {
                            assert_eq!((e, e_prime), (1, 1));
                            count += 1;
                        }
                    }
                }
            }
            assert_eq!(count, 4);
        }
    }

    #[test]
    fn remembers_splits_slits_across_qubit_states() {
        let mask = build_mask(QubitBehavior::Remembers, 4).unwrap();
        for i_prime in 1..=4usize {
            for e_prime in 1..=2 {
                for e in 1..=2 {
                    if mask.allowed(1, e, i_prime, e_prime).unwrap() {
                        let expected_e = if i_prime <= 2 { 2 } else { 1 };
                        assert_eq!(e, expected_e);
                    }
                }
            }
        }
    }

    #[test]
    fn forgets_feeds_only_default_state() {
        let mask = build_mask(QubitBehavior::Forgets, 4).unwrap();
        for i_prime in 1..=4 {
            for e_prime in 1..=2 {
                assert!(!mask.allowed(2, 2, i_prime, e_prime).unwrap());
            }
            assert_eq!(mask.admissible_pairs(i_prime), 1);
        }
    }

    #[test]
    fn interference_by_behavior() {
        let possible = |b| interference_possible(&build_mask(b, 8).unwrap());
        assert!(possible(QubitBehavior::None));
        assert!(!possible(QubitBehavior::Remembers));
        assert!(possible(QubitBehavior::Forgets));
    }

    #[test]
    fn two_of_eight_combinations_allowed() {
        for b in QubitBehavior::ALL {
            let count = [true, false]
                .iter()
                .flat_map(|&lower| {
                    (1..=2u8).flat_map(move |ep| (1..=2u8).map(move |e| admits(b, lower, ep, e)))
                })
                .filter(|&x| x)
                .count();
            assert_eq!(count, 2, "{b}");
        }
    }

    #[test]
    fn text_export_layout() {
        let text = build_mask(QubitBehavior::Remembers, 2).unwrap().to_text();
        // columns: (i'=1,e'=1) (i'=2,e'=1) (i'=1,e'=2) (i'=2,e'=2)
        let expected = "behavior=remembers n=2\n.#..\n.#..\n..#.\n..#.\n";
        assert_eq!(text, expected);
        let back = TransitionMask::from_text(&text).unwrap();
        assert_eq!(back, build_mask(QubitBehavior::Remembers, 2).unwrap());
    }

    #[test]
    fn text_parse_rejects_inconsistent_rows() {
        let text = "behavior=none n=2\n#.#.\n....\n....\n....\n";
        assert!(TransitionMask::from_text(text).is_err());
    }
}
