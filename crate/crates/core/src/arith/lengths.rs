use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LengthFamily {
    /// Lengths `3r - 1`, `r >= 5` odd with `3 ∤ r`.
    X2Yk,
    /// Lengths `3r - 5`, `r >= 7` odd with `3 ∤ r + 1`.
    XNeg2Yk,
}

impl LengthFamily {
    pub fn admits(self, r: u64) -> bool {
        match self {
            LengthFamily::X2Yk => r >= 5 && r % 2 == 1 && r % 3 != 0,
            LengthFamily::XNeg2Yk => r >= 7 && r % 2 == 1 && (r + 1) % 3 != 0,
        }
    }

    pub fn length(self, r: u64) -> u64 {
        match self {
            LengthFamily::X2Yk => 3 * r - 1,
            LengthFamily::XNeg2Yk => 3 * r - 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthTable {
    pub family: LengthFamily,
    pub r_max: u64,
    pub rs: Vec<u64>,
    pub lengths: Vec<u64>,
    pub residues_mod_18: BTreeSet<u64>,
}

pub fn length_residues(family: LengthFamily, r_max: u64) -> Result<LengthTable> {
    if r_max < 7 {
        return Err(Error::InvalidArgument(format!("r_max = {r_max} must be >= 7")));
    }
    let rs: Vec<u64> = (1..=r_max).filter(|&r| family.admits(r)).collect();
    let lengths: Vec<u64> = rs.iter().map(|&r| family.length(r)).collect();
    let residues_mod_18 = lengths.iter().map(|l| l % 18).collect();
    Ok(LengthTable {
        family,
        r_max,
        rs,
        lengths,
        residues_mod_18,
    })
}
