//! Strata of Abelian differentials and their connected components.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A stratum `H(k_1, ..., k_s)`, stored with the zero orders sorted in
/// decreasing order. Orders equal to zero (marked regular points) are
/// allowed so that square-tiled surfaces can report every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StratumSignature {
    zero_orders: Vec<u32>,
    genus: u32,
}

impl StratumSignature {
    pub fn new(mut zero_orders: Vec<u32>) -> Result<Self> {
        if zero_orders.is_empty() {
            return Err(Error::InvalidStratum("no zeros".into()));
        }
        let total: u32 = zero_orders.iter().sum();
        if total % 2 != 0 {
            return Err(Error::InvalidStratum(format!(
                "sum of zero orders {total} is odd"
            )));
        }
        zero_orders.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self {
            genus: total / 2 + 1,
            zero_orders,
        })
    }

    pub fn zero_orders(&self) -> &[u32] {
        &self.zero_orders
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    /// Number of zeros (including marked points, if any).
    pub fn num_zeros(&self) -> usize {
        self.zero_orders.len()
    }

    /// Number of horizontal saddle connections of any cylinder diagram in
    /// this stratum: `2g - 2 + s`.
    pub fn num_saddle_connections(&self) -> usize {
        2 * self.genus as usize - 2 + self.zero_orders.len()
    }

    pub fn has_marked_points(&self) -> bool {
        self.zero_orders.contains(&0)
    }

    /// Drop the order-0 entries. A surface with only regular vertices keeps a
    /// single marked point so that the result is still a signature.
    pub fn reduced(&self) -> Self {
        let mut orders: Vec<u32> = self.zero_orders.iter().copied().filter(|&k| k > 0).collect();
        if orders.is_empty() {
            orders.push(0);
        }
        Self {
            zero_orders: orders,
            genus: self.genus,
        }
    }

    pub fn all_even(&self) -> bool {
        self.zero_orders.iter().all(|k| k % 2 == 0)
    }

    /// Display name, e.g. `H(3,1)`.
    pub fn name(&self) -> String {
        self.to_string()
    }

    /// All strata (without marked points) of the given genus.
    pub fn of_genus(genus: u32) -> Vec<Self> {
        if genus == 0 {
            return Vec::new();
        }
        if genus == 1 {
            return vec![Self::new(vec![0]).unwrap()];
        }
        let mut out = Vec::new();
        let mut cur = Vec::new();
        partitions(2 * genus - 2, 2 * genus - 2, &mut cur, &mut out);
        out.into_iter()
            .map(|p| Self::new(p).unwrap())
            .collect()
    }
}

fn partitions(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if rest == 0 {
        out.push(cur.clone());
        return;
    }
    for k in (1..=max.min(rest)).rev() {
        cur.push(k);
        partitions(rest - k, k, cur, out);
        cur.pop();
    }
}

impl fmt::Display for StratumSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("H(")?;
        for (i, k) in self.zero_orders.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str(")")
    }
}

/// Connected component of a stratum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentLabel {
    Hyp,
    Odd,
    Even,
    Unique,
}

impl fmt::Display for ComponentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComponentLabel::Hyp => "hyp",
            ComponentLabel::Odd => "odd",
            ComponentLabel::Even => "even",
            ComponentLabel::Unique => "unique",
        })
    }
}

impl FromStr for ComponentLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "hyp" => Ok(ComponentLabel::Hyp),
            "odd" => Ok(ComponentLabel::Odd),
            "even" => Ok(ComponentLabel::Even),
            "unique" | "" => Ok(ComponentLabel::Unique),
            other => Err(Error::InvalidStratum(format!("unknown component '{other}'"))),
        }
    }
}

/// A stratum name as typed by a user: `H(2,2)`, `H(2,2)^odd`, `H^hyp(2,2)`
/// or `Hodd(4)`. The component suffix is returned separately; it is a
/// filter, not part of the signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumSpec {
    pub signature: StratumSignature,
    pub component: Option<ComponentLabel>,
}

impl FromStr for StratumSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::InvalidStratum(s.clone());
        let rest = s.strip_prefix('H').ok_or_else(bad)?;
        let open = rest.find('(').ok_or_else(bad)?;
        let close = rest.find(')').ok_or_else(bad)?;
        if close < open {
            return Err(bad());
        }
        let prefix = rest[..open].trim_start_matches('^');
        let suffix = rest[close + 1..].trim_start_matches('^');
        let comp_text = match (prefix.is_empty(), suffix.is_empty()) {
            (true, true) => None,
            (false, true) => Some(prefix),
            (true, false) => Some(suffix),
            (false, false) => return Err(bad()),
        };
        let component = comp_text.map(str::parse).transpose()?;
        let mut orders = Vec::new();
        for part in rest[open + 1..close].split(',') {
            // accept exponent notation such as 1^2
            let (base, exp) = match part.split_once('^') {
                Some((b, e)) => (b, e.parse::<usize>().map_err(|_| bad())?),
                None => (part, 1),
            };
            let k: u32 = base.parse().map_err(|_| bad())?;
            orders.extend(std::iter::repeat(k).take(exp));
        }
        Ok(StratumSpec {
            signature: StratumSignature::new(orders)?,
            component,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_and_edges() {
        let h = StratumSignature::new(vec![1, 3]).unwrap();
        assert_eq!(h.to_string(), "H(3,1)");
        assert_eq!(h.genus(), 3);
        assert_eq!(h.num_saddle_connections(), 6);
        let h4 = StratumSignature::new(vec![4]).unwrap();
        assert_eq!(h4.num_saddle_connections(), 5);
        assert!(StratumSignature::new(vec![3]).is_err());
    }

    #[test]
    fn parse_names() {
        let s: StratumSpec = "H(2,2)^odd".parse().unwrap();
        assert_eq!(s.signature.to_string(), "H(2,2)");
        assert_eq!(s.component, Some(ComponentLabel::Odd));
        let s: StratumSpec = "H^hyp(4)".parse().unwrap();
        assert_eq!(s.component, Some(ComponentLabel::Hyp));
        let s: StratumSpec = "H(1^2)".parse().unwrap();
        assert_eq!(s.signature.zero_orders(), &[1, 1]);
        assert!("H(2,2".parse::<StratumSpec>().is_err());
        assert!("X(2)".parse::<StratumSpec>().is_err());
    }

    #[test]
    fn genus_lists() {
        let g2: Vec<String> = StratumSignature::of_genus(2).iter().map(|s| s.to_string()).collect();
        assert_eq!(g2, ["H(2)", "H(1,1)"]);
        assert_eq!(StratumSignature::of_genus(3).len(), 5);
    }
}
