//! The convention ledger: every sign and orientation choice in one record.

use crate::kv::PentagonOrdering;
use serde::Serialize;

/// Convention record. Only the pentagon ordering can be overridden at run
/// time; the other entries are fixed by the implementation and listed so that
/// reports state them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ledger {
    /// Tangential automorphisms act by `exp(-ρ(log g))`.
    pub action: &'static str,
    /// Group law on `log`: `log(g·h) = bch(log h, log g)`.
    pub group_law: &'static str,
    /// Total differential `D = d + (-1)^deg Δ`.
    pub total_differential: &'static str,
    pub pentagon: PentagonOrdering,
    /// `ω₁ = -C(g)`; with it `[ω₀] = -1/12 [φ]`.
    pub omega1: &'static str,
    /// Descent forms indexed by de Rham degree.
    pub descent_index: &'static str,
    pub maurer_cartan: &'static str,
}

impl Default for Ledger {
    fn default() -> Self {
        Ledger {
            action: "exp(-rho(log g))",
            group_law: "log(gh) = bch(log h, log g)",
            total_differential: "D = d + (-1)^deg Delta",
            pentagon: PentagonOrdering::Standard,
            omega1: "omega1 = -C(g) - s Delta<A,x1>",
            descent_index: "omega_j in de Rham degree j at level 3-j",
            maurer_cartan: "dg g^-1 = kappa(ad x1) dx1, kappa(z) = (e^z - 1)/z",
        }
    }
}

impl Ledger {
    /// Stable text form, one `key = value` line per entry. Hashing this
    /// identifies the convention set.
    pub fn canonical(&self) -> String {
        let rows = [
            ("action", self.action.to_string()),
            ("group_law", self.group_law.to_string()),
            ("total_differential", self.total_differential.to_string()),
            ("pentagon", self.pentagon.to_string()),
            ("omega1", self.omega1.to_string()),
            ("descent_index", self.descent_index.to_string()),
            ("maurer_cartan", self.maurer_cartan.to_string()),
        ];
        rows.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }

    /// Entries differing from the default, as `key: default -> value`.
    pub fn overrides(&self) -> Vec<String> {
        let d = Ledger::default();
        let mut out = Vec::new();
        if self.pentagon != d.pentagon {
            out.push(format!("pentagon: {} -> {}", d.pentagon, self.pentagon));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_lists_every_entry() {
        let l = Ledger::default();
        assert_eq!(l.canonical().lines().count(), 7);
        assert!(l.overrides().is_empty());
        let o = Ledger {
            pentagon: PentagonOrdering::Opposite,
            ..l.clone()
        };
        assert_ne!(o.canonical(), l.canonical());
        assert_eq!(o.overrides().len(), 1);
    }
}
