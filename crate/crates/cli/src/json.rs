//! JSON schemas. Field names and ordering are part of the output contract.

use krs_core::decomposition::IdempotentFamily;
use krs_core::finite_field::{BaseField, Field};
use krs_core::{CensusRow, CirculantElement, CirculantParams, CirculantRing, DecompositionReport, Error, Orbit, VerificationReport};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusJson {
    pub d: Vec<u64>,
    pub phi_product: u64,
    pub nu: u64,
    pub eta: u64,
}

impl From<&CensusRow> for CensusJson {
    fn from(r: &CensusRow) -> Self {
        CensusJson {
            d: r.d.clone(),
            phi_product: r.phi_product,
            nu: r.nu,
            eta: r.eta,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub field_degree: u64,
    pub local_exponents: Vec<u64>,
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeJson {
    pub q: u64,
    pub p: u64,
    pub e: u32,
    pub m: Vec<u64>,
    pub semisimple: bool,
    pub local: bool,
    pub total_dimension: u64,
    pub census: Vec<CensusJson>,
    /// Merged by `(field_degree, local_exponents)` and sorted by that key.
    pub components: Vec<ComponentJson>,
}

impl From<&DecompositionReport> for DecomposeJson {
    fn from(r: &DecompositionReport) -> Self {
        DecomposeJson {
            q: r.q,
            p: r.p,
            e: r.e,
            m: r.params.m().to_vec(),
            semisimple: r.is_semisimple,
            local: r.is_local,
            total_dimension: r.total_dimension,
            census: r.census.iter().map(CensusJson::from).collect(),
            components: r
                .aggregated()
                .into_iter()
                .map(|(field_degree, local_exponents, multiplicity)| ComponentJson {
                    field_degree,
                    local_exponents,
                    multiplicity,
                })
                .collect(),
        }
    }
}

/// Dense array form of a ring element: coefficients in row-major exponent
/// order, each written as its field index (base-`p` digits of the
/// coordinates over `F_p`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub shape: Vec<u64>,
    pub coefficients: Vec<u64>,
}

impl ElementJson {
    pub fn from_element(ring: &CirculantRing<BaseField>, f: &CirculantElement<BaseField>) -> Self {
        ElementJson {
            shape: f.shape().to_vec(),
            coefficients: f.coeffs().iter().map(|c| ring.field().index(c) as u64).collect(),
        }
    }

    pub fn to_element(&self, ring: &CirculantRing<BaseField>) -> Result<CirculantElement<BaseField>, Error> {
        if self.shape != ring.shape() {
            return Err(Error::ShapeMismatch {
                left: ring.shape().to_vec(),
                right: self.shape.clone(),
            });
        }
        let field = ring.field();
        let coeffs = self
            .coefficients
            .iter()
            .map(|&c| {
                if c as u128 >= field.order() {
                    Err(Error::Parse(format!("coefficient {c} out of range")))
                } else {
                    Ok(field.element(c as u128))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        ring.from_coeffs(coeffs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdempotentJson {
    pub representative: Vec<u64>,
    pub order_tuple: Vec<u64>,
    pub field_degree: u64,
    pub dimension: u64,
    pub nilpotency: Vec<Option<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub element: Option<ElementJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyJson {
    pub q: u64,
    pub m: Vec<u64>,
    pub passed: bool,
    pub t: u64,
    pub idempotents: Vec<IdempotentJson>,
    pub component_dimensions: Vec<u64>,
    pub radical_dimension: u64,
    pub checks: Vec<CheckJson>,
}

impl VerifyJson {
    pub fn new(v: &VerificationReport, family: Option<&IdempotentFamily>) -> Self {
        VerifyJson {
            q: v.report.q,
            m: v.report.params.m().to_vec(),
            passed: v.passed(),
            t: v.t,
            idempotents: v
                .components
                .iter()
                .enumerate()
                .map(|(i, c)| IdempotentJson {
                    representative: c.representative.clone(),
                    order_tuple: c.order_tuple.clone(),
                    field_degree: c.field_degree,
                    dimension: c.rank,
                    nilpotency: c.nilpotency.clone(),
                    element: family.map(|f| ElementJson::from_element(f.ring(), &f.entries()[i].1)),
                })
                .collect(),
            component_dimensions: v.components.iter().map(|c| c.rank).collect(),
            radical_dimension: v.radical_rank,
            checks: v
                .checks
                .iter()
                .map(|c| CheckJson {
                    name: c.name.to_string(),
                    passed: c.passed,
                    witness: c.witness.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitJson {
    pub representative: Vec<u64>,
    pub size: u64,
    pub order_tuple: Vec<u64>,
    pub field_degree: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitsJson {
    pub q: u64,
    pub m: Vec<u64>,
    pub r: Vec<u64>,
    pub orbit_count: usize,
    pub orbits: Vec<OrbitJson>,
    pub census: Vec<CensusJson>,
}

impl OrbitsJson {
    pub fn new(q: u64, params: &CirculantParams, orbits: &[Orbit], census: &[CensusRow]) -> Self {
        OrbitsJson {
            q,
            m: params.m().to_vec(),
            r: params.p_free().to_vec(),
            orbit_count: orbits.len(),
            orbits: orbits
                .iter()
                .map(|o| OrbitJson {
                    representative: o.representative().clone(),
                    size: o.size(),
                    order_tuple: o.order_tuple().to_vec(),
                    field_degree: o.field_degree(),
                })
                .collect(),
            census: census.iter().map(CensusJson::from).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use krs_core::FieldTower;

    #[test]
    fn element_array_form_round_trips() {
        let ring = CirculantRing::new(FieldTower::new(4, 1).unwrap().base().clone(), &[3, 2]).unwrap();
        let f = ring.parse("3 + 2*X1*X2 + X1^2").unwrap();
        let j = ElementJson::from_element(&ring, &f);
        assert_eq!(j.coefficients, vec![3, 0, 0, 2, 1, 0]);
        let text = serde_json::to_string(&j).unwrap();
        assert_eq!(text, r#"{"shape":[3,2],"coefficients":[3,0,0,2,1,0]}"#);
        let back: ElementJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_element(&ring).unwrap(), f);
        let bad = ElementJson { shape: vec![3, 2], coefficients: vec![4, 0, 0, 0, 0, 0] };
        assert!(bad.to_element(&ring).is_err());
    }
}
