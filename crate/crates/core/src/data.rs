//! Bundled reference constants: the Hermitian lattice Λ, the five
//! anti-involutions with their fixed lattices, root coordinates and the
//! cuspidal data.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::coxeter::{CoxeterDiagram, DiagramSpec};
use crate::error::{Error, Result};
use crate::fixed_points::{induced_gram, ZQuadraticLattice};
use crate::intmat::integer_coordinates;
use crate::lattices::{make_lattice, to_real_coords, AntiIsometry, HermitianGaussLattice};
use crate::matrix::{GMat, ZMat};
use crate::scalars::GaussInt;
use crate::vinberg::VinbergOptions;

pub const BUNDLED: &str = include_str!("../data/reference_data.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReferenceData {
    pub version: u32,
    pub lambda: GMat,
    pub lz: GMat,
    #[serde(rename = "chiII")]
    pub chi_ii: GMat,
    pub chi0: GMat,
    pub chi1: GMat,
    pub chi2: GMat,
    pub chi3: GMat,
    pub chi4: GMat,
    #[serde(rename = "A0")]
    pub a0: GMat,
    #[serde(rename = "A1")]
    pub a1: GMat,
    #[serde(rename = "A2")]
    pub a2: GMat,
    #[serde(rename = "A3")]
    pub a3: GMat,
    #[serde(rename = "A4")]
    pub a4: GMat,
    #[serde(rename = "B0")]
    pub b0: GMat,
    #[serde(rename = "B1")]
    pub b1: GMat,
    #[serde(rename = "B2")]
    pub b2: GMat,
    #[serde(rename = "B3")]
    pub b3: GMat,
    #[serde(rename = "B4")]
    pub b4: GMat,
    #[serde(rename = "L0")]
    pub l0: ZMat,
    #[serde(rename = "L1")]
    pub l1: ZMat,
    #[serde(rename = "L2")]
    pub l2: ZMat,
    #[serde(rename = "L3")]
    pub l3: ZMat,
    #[serde(rename = "L4")]
    pub l4: ZMat,
    #[serde(rename = "roots_L2")]
    pub roots_l2: GMat,
    #[serde(rename = "roots_L3")]
    pub roots_l3: GMat,
    pub kappa1: GMat,
    pub kappa3: GMat,
    pub cone_vectors: BTreeMap<String, Vec<GaussInt>>,
    #[serde(rename = "cone_A1")]
    pub cone_a1: GMat,
    #[serde(rename = "cone_A2")]
    pub cone_a2: GMat,
    pub diagrams: BTreeMap<String, DiagramSpec>,
    pub symmetries: BTreeMap<String, Vec<usize>>,
    /// Pinned Vinberg controlling vectors, by lattice name.
    #[serde(default)]
    pub controlling_vectors: BTreeMap<String, Vec<i64>>,
}

/// Height ceiling for the reference Vinberg runs.
pub const REFERENCE_CEILING: u64 = 32;

/// The five fixed-lattice names in index order.
pub const LATTICE_NAMES: [&str; 5] = ["L0", "L1", "L2", "L3", "L4"];

#[derive(Clone, Debug)]
pub struct Dataset {
    pub data: ReferenceData,
    pub checksum: String,
    pub source: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn parse(text: &str, source: &str) -> Result<Dataset> {
    let data: ReferenceData =
        serde_json::from_str(text).map_err(|e| Error::Data(format!("{source}: {e}")))?;
    Ok(Dataset {
        data,
        checksum: sha256_hex(text.as_bytes()),
        source: source.to_string(),
    })
}

pub fn reference_data() -> Dataset {
    parse(BUNDLED, "bundled").expect("bundled data file parses")
}

pub fn load(path: &Path) -> Result<Dataset> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Data(format!("{}: {e}", path.display())))?;
    parse(&text, &path.display().to_string())
}

/// Parses "L3", "3", "III" or "II"-style names into an index `0..=4`.
pub fn lattice_index(name: &str) -> Result<usize> {
    let t = name.trim();
    let t = t
        .strip_prefix('L')
        .or_else(|| t.strip_prefix("chi"))
        .unwrap_or(t);
    let idx = match t {
        "0" => 0,
        "1" | "I" => 1,
        "2" | "II" => 2,
        "3" | "III" => 3,
        "4" | "IV" => 4,
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    Ok(idx)
}

fn cols(m: &GMat) -> Vec<Vec<GaussInt>> {
    m.to_cols()
}

impl ReferenceData {
    pub fn lambda(&self) -> Result<HermitianGaussLattice> {
        make_lattice(self.lambda.clone())
    }

    pub fn lz(&self) -> Result<HermitianGaussLattice> {
        make_lattice(self.lz.clone())
    }

    pub fn chi(&self, i: usize) -> &GMat {
        [&self.chi0, &self.chi1, &self.chi2, &self.chi3, &self.chi4][i]
    }

    pub fn anti(&self, i: usize) -> AntiIsometry {
        AntiIsometry::new(self.chi(i).clone())
    }

    pub fn a(&self, i: usize) -> &GMat {
        [&self.a0, &self.a1, &self.a2, &self.a3, &self.a4][i]
    }

    /// Distinguished basis of `Fix(χ_i)` as Gaussian vectors.
    pub fn basis(&self, i: usize) -> Vec<Vec<GaussInt>> {
        cols([&self.b0, &self.b1, &self.b2, &self.b3, &self.b4][i])
    }

    pub fn gram(&self, i: usize) -> &ZMat {
        [&self.l0, &self.l1, &self.l2, &self.l3, &self.l4][i]
    }

    /// `L_i` together with its embedding into Λ through `B_i`.
    pub fn fixed_lattice(&self, i: usize) -> ZQuadraticLattice {
        ZQuadraticLattice {
            gram: self.gram(i).clone(),
            embedding: Some(self.basis(i)),
        }
    }

    /// Listed fundamental roots of `L2` / `L3` as vectors of Λ.
    pub fn lambda_roots(&self, i: usize) -> Option<Vec<Vec<GaussInt>>> {
        match i {
            2 => Some(self.roots_l2.to_cols()),
            3 => Some(self.roots_l3.to_cols()),
            _ => None,
        }
    }

    /// The same roots in coordinates of the basis `B_i`.
    pub fn coordinate_roots(&self, i: usize) -> Result<Option<Vec<Vec<BigInt>>>> {
        let Some(roots) = self.lambda_roots(i) else {
            return Ok(None);
        };
        let basis: Vec<Vec<BigInt>> = self.basis(i).iter().map(|v| to_real_coords(v)).collect();
        roots
            .iter()
            .map(|r| integer_coordinates(&basis, &to_real_coords(r)).ok_or(Error::NotInLattice))
            .collect::<Result<Vec<_>>>()
            .map(Some)
    }

    /// Checks that the stored `L_i` is the Gram matrix of the stored `B_i`.
    pub fn check_consistent(&self, i: usize) -> Result<()> {
        let lam = self.lambda()?;
        if induced_gram(&lam, &self.basis(i)) != *self.gram(i) {
            return Err(Error::Data(format!(
                "{} is not the Gram matrix of B{i}",
                LATTICE_NAMES[i]
            )));
        }
        Ok(())
    }

    pub fn diagram(&self, i: usize) -> Result<CoxeterDiagram> {
        let name = LATTICE_NAMES[i];
        let spec = self
            .diagrams
            .get(name)
            .ok_or_else(|| Error::Data(format!("missing diagram {name}")))?;
        CoxeterDiagram::from_spec(spec)
    }

    pub fn symmetry(&self, i: usize) -> Option<&Vec<usize>> {
        self.symmetries.get(LATTICE_NAMES[i])
    }

    pub fn controlling_vector(&self, i: usize) -> Option<Vec<BigInt>> {
        self.controlling_vectors
            .get(LATTICE_NAMES[i])
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Options for the reference Vinberg run on `L_i`. All five stored
    /// lattices close up well below [`REFERENCE_CEILING`].
    pub fn vinberg_options(&self, i: usize, threads: usize) -> VinbergOptions {
        VinbergOptions {
            v0: self.controlling_vector(i),
            threads,
            ceiling: REFERENCE_CEILING,
            ..VinbergOptions::default()
        }
    }

    pub fn cone_vector(&self, name: &str) -> Result<&Vec<GaussInt>> {
        self.cone_vectors
            .get(name)
            .ok_or_else(|| Error::Data(format!("missing cone vector {name}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_parses() {
        let d = reference_data();
        assert_eq!(d.checksum.len(), 64);
        assert_eq!(d.data.lambda.rows(), 6);
        for i in 0..5 {
            assert_eq!(d.data.basis(i).len(), 6);
            assert_eq!(d.data.gram(i).rows(), 6);
        }
        assert_eq!(d.data.coordinate_roots(3).unwrap().unwrap().len(), 8);
    }

    #[test]
    fn names() {
        assert_eq!(lattice_index("L3").unwrap(), 3);
        assert_eq!(lattice_index("IV").unwrap(), 4);
        assert!(lattice_index("L7").is_err());
    }
}
