use serde::{Deserialize, Serialize};

use crate::error::{CkfError, Result};
use crate::exact::Rational;
use crate::roots::{cartan, Multiplicity, RestrictedRootData, Signature};

use super::params::Params;

/// Current catalog file layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Table {
    T1,
    T2,
    T3,
}

impl Table {
    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(Table::T1),
            2 => Some(Table::T2),
            3 => Some(Table::T3),
            _ => None,
        }
    }
}

impl std::fmt::Display for Table {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Root data in compact form: a reduced Cartan type, one `(m+, m-)` per
/// root length class (longest first) and the simple roots where the
/// signature relating it to the all-`(m, 0)` data is `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootDataSpec {
    /// Parameters this descriptor applies to; absent for unparameterized entries.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub at: Option<Params>,
    pub system: String,
    pub mult: Vec<[u32; 2]>,
    #[serde(default)]
    pub twist: Vec<usize>,
    pub dim_z_k_h: usize,
    pub dim_z_g_a: usize,
    /// Expected `dim(k ∩ h)`, checked on load.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_k_cap_h: Option<usize>,
}

fn length_sq(gram: &[Vec<Rational>], c: &[i64]) -> Rational {
    let mut s = Rational::from_integer(0.into());
    for (i, a) in c.iter().enumerate() {
        for (j, b) in c.iter().enumerate() {
            s += &gram[i][j] * Rational::from_integer((a * b).into());
        }
    }
    s
}

impl RootDataSpec {
    pub fn build(&self) -> Result<RestrictedRootData> {
        let bad = |m: String| CkfError::InvalidRootData(format!("{}: {m}", self.system));
        let gram = cartan::gram_matrix(&self.system)?;
        let rank = gram.len();
        let pos = cartan::positive_roots(&gram);
        let mut lengths: Vec<Rational> = pos.iter().map(|c| length_sq(&gram, c)).collect();
        let by_root = lengths.clone();
        lengths.sort();
        lengths.dedup();
        lengths.reverse();
        if lengths.len() != self.mult.len() {
            return Err(bad(format!(
                "{} root lengths but {} multiplicity classes",
                lengths.len(),
                self.mult.len()
            )));
        }
        let positive: Vec<(Vec<i64>, Multiplicity)> = pos
            .into_iter()
            .zip(&by_root)
            .map(|(c, l)| {
                let k = lengths.iter().position(|x| x == l).expect("length class");
                (c, Multiplicity::new(self.mult[k][0], self.mult[k][1]))
            })
            .collect();
        let data = RestrictedRootData::from_simple_coordinates(rank, &positive, self.dim_z_k_h, self.dim_z_g_a)?;
        let mut eps = Signature::trivial(rank);
        for &t in &self.twist {
            if t == 0 || t > rank {
                return Err(bad(format!("twist node {t} out of range 1..={rank}")));
            }
            eps.values_on_simple[t - 1] = -1;
        }
        data.twist(&eps)
    }
}

/// One row of the catalog file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub id: String,
    pub g: String,
    pub h: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tables: Vec<Table>,
    /// Tables in which the row carries a star.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub starred: Vec<Table>,
    /// Integer expression for the rank used to bound table runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<String>,
    /// Pair label template resolved by the matrix engine.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realization: Option<String>,
    /// Non-symmetric candidate templates.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub candidates: Vec<String>,
    /// Parameters at which the engine is expected to confirm the row;
    /// elsewhere the row is reported from the catalog.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub computed_when: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub admits_compact_form: Option<bool>,
    /// For rows outside the tables: expected verdict of `decide`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect_obstructed: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub root_data: Vec<RootDataSpec>,
}

impl CatalogEntry {
    pub fn in_table(&self, t: Table) -> bool {
        self.tables.contains(&t)
    }

    pub fn is_starred(&self, t: Table) -> bool {
        self.starred.contains(&t)
    }

    pub fn admits_compact_form(&self) -> bool {
        self.admits_compact_form == Some(true)
    }

    /// The descriptor for `params`: an exact `at` match, or the
    /// unparameterized one.
    pub fn root_data_at(&self, params: &Params) -> Option<&RootDataSpec> {
        self.root_data
            .iter()
            .find(|r| r.at.as_ref() == Some(params))
            .or_else(|| self.root_data.iter().find(|r| r.at.is_none()))
    }

    pub fn pair_label(&self) -> String {
        format!("{}/{}", self.g, self.h)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct CatalogFile {
    pub schema_version: u32,
    #[serde(default, rename = "entry")]
    pub entries: Vec<CatalogEntry>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(system: &str, mult: &[[u32; 2]], twist: &[usize], zkh: usize, zga: usize) -> RootDataSpec {
        RootDataSpec {
            at: None,
            system: system.into(),
            mult: mult.to_vec(),
            twist: twist.to_vec(),
            dim_z_k_h: zkh,
            dim_z_g_a: zga,
            dim_k_cap_h: None,
        }
    }

    #[test]
    fn exceptional_compact_dimensions() {
        // (descriptor, dim of the maximal compact subalgebra of h)
        let cases = [
            (spec("E6", &[[2, 0]], &[1], 6, 12), 46),
            (spec("E6", &[[2, 0]], &[2], 6, 12), 38),
            (spec("E7", &[[2, 0]], &[2], 7, 14), 63),
            (spec("E7", &[[2, 0]], &[1], 7, 14), 69),
            (spec("E7", &[[2, 0]], &[7], 7, 14), 79),
            (spec("E8", &[[2, 0]], &[1], 8, 16), 120),
            (spec("E8", &[[2, 0]], &[8], 8, 16), 136),
            (spec("F4", &[[2, 0], [2, 0]], &[1], 4, 8), 24),
            (spec("F4", &[[2, 0], [2, 0]], &[4], 4, 8), 36),
            (spec("G2", &[[2, 0], [2, 0]], &[2], 2, 4), 6),
            (spec("E6", &[[1, 0]], &[1], 0, 6), 20),
            (spec("A2", &[[8, 0]], &[1], 28, 30), 36),
            (spec("E7", &[[1, 0]], &[7], 0, 7), 36),
            (spec("C3", &[[1, 0], [8, 0]], &[3], 28, 31), 52),
        ];
        for (s, dim) in cases {
            let d = s.build().unwrap();
            assert_eq!(d.dim_k_cap_h(), dim, "{} twist {:?}", s.system, s.twist);
            assert!(!d.is_basic(), "{}", s.system);
        }
    }

    #[test]
    fn folded_system_twist_lands_on_long_nodes() {
        // e6(C)/e6(6): k ∩ h = sp(4)
        let found: Vec<usize> = (1..=4)
            .filter(|&t| spec("F4", &[[2, 0], [2, 2]], &[t], 4, 12).build().unwrap().dim_k_cap_h() == 36)
            .collect();
        assert_eq!(found, vec![1, 2]);
    }

    #[test]
    fn class_count_must_match() {
        assert!(spec("B2", &[[2, 0]], &[], 0, 2).build().is_err());
        assert!(spec("A2", &[[1, 0]], &[3], 0, 2).build().is_err());
        assert!(spec("X2", &[[1, 0]], &[], 0, 2).build().is_err());
    }
}
