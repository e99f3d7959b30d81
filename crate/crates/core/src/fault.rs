//! Deliberate kernel mutations used to check that campaign properties
//! actually detect bugs. A fault is carried by a
//! [`FilteredTotal`](crate::filtration::FilteredTotal) built with
//! [`FilteredTotal::with_fault`](crate::filtration::FilteredTotal::with_fault);
//! ordinary construction never enables one.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Fault {
    /// Totalization negates `d'` on the bottom row `q = 0`.
    TotalizeSign,
    /// `Z_r` tests `dξ ∈ F^{p+r+1}` instead of `F^{p+r}`.
    CycleOffByOne,
    /// `B_r` uses `d(F^{p-r+1})` instead of `d(F^{p-r})`.
    BoundaryOffByOne,
    /// The leading-term space is taken to be zero.
    LeadingTermIgnored,
    /// The obstruction search drops the `d'ξ_{r-1} ∉ Im d''` condition.
    ObstructionSkipsImageCondition,
}

impl Fault {
    pub const ALL: [Fault; 5] = [
        Fault::TotalizeSign,
        Fault::CycleOffByOne,
        Fault::BoundaryOffByOne,
        Fault::LeadingTermIgnored,
        Fault::ObstructionSkipsImageCondition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fault::TotalizeSign => "totalize-sign",
            Fault::CycleOffByOne => "cycle-off-by-one",
            Fault::BoundaryOffByOne => "boundary-off-by-one",
            Fault::LeadingTermIgnored => "leading-term-ignored",
            Fault::ObstructionSkipsImageCondition => "obstruction-skips-image",
        }
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fault {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Fault::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown fault `{s}`"))
    }
}
