use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::algebra::GroupAlgebra;
use crate::invariants::{dimension_section_groups, fingerprint, Caps, Fingerprint};
use crate::pgroup::{is_isomorphic_small, DEFAULT_ISO_CAP};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FieldValues {
    pub left: Value,
    pub right: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// The named field differs, so the group algebras are not isomorphic.
    Distinguished {
        field: String,
        left: Value,
        right: Value,
    },
    /// No implemented invariant separates the algebras. This is not a claim
    /// of isomorphism.
    Indistinguishable,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub verdict: Verdict,
    pub differing_fields: Vec<String>,
    pub fields: BTreeMap<String, FieldValues>,
}

impl ComparisonReport {
    pub fn is_distinguished(&self) -> bool {
        matches!(self.verdict, Verdict::Distinguished { .. })
    }

    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("plain data");
        serde_json::to_string_pretty(&value).expect("plain data")
    }

    /// The same comparison with the two sides exchanged.
    pub fn swapped(&self) -> Self {
        let verdict = match &self.verdict {
            Verdict::Distinguished { field, left, right } => Verdict::Distinguished {
                field: field.clone(),
                left: right.clone(),
                right: left.clone(),
            },
            Verdict::Indistinguishable => Verdict::Indistinguishable,
        };
        Self {
            verdict,
            differing_fields: self.differing_fields.clone(),
            fields: self
                .fields
                .iter()
                .map(|(k, v)| {
                    (
                        k.clone(),
                        FieldValues {
                            left: v.right.clone(),
                            right: v.left.clone(),
                        },
                    )
                })
                .collect(),
        }
    }
}

/// Field order used to name the first differing field.
const FIELD_ORDER: &[&str] = &[
    "p",
    "order",
    "exponent",
    "abelianization",
    "center",
    "dim_quotients",
    "center_sections",
    "derived_dim_quotients",
    "kuelshammer_counts",
    "pm_counts",
    "kernel_sizes",
    "quillen_counts",
    "roggenkamp",
    "elem_factor_order",
    "dimension_sections",
];

/// Compares two fingerprints field by field.
pub fn compare_fingerprints(left: &Fingerprint, right: &Fingerprint) -> ComparisonReport {
    let lv = serde_json::to_value(left).expect("plain data");
    let rv = serde_json::to_value(right).expect("plain data");
    let mut fields = BTreeMap::new();
    let mut differing = Vec::new();
    for &name in FIELD_ORDER {
        let (l, r) = (lv[name].clone(), rv[name].clone());
        if l != r {
            differing.push(name.to_string());
        }
        fields.insert(name.to_string(), FieldValues { left: l, right: r });
    }
    let verdict = match differing.first() {
        Some(f) => Verdict::Distinguished {
            field: f.clone(),
            left: fields[f].left.clone(),
            right: fields[f].right.clone(),
        },
        None => Verdict::Indistinguishable,
    };
    ComparisonReport {
        verdict,
        differing_fields: differing,
        fields,
    }
}

/// Compares `F_p[G]` and `F_p[H]`. When all fingerprint fields agree, the
/// dimension-series sections small enough for the isomorphism search are
/// also compared up to isomorphism.
pub fn compare(g: &GroupAlgebra, h: &GroupAlgebra, caps: Caps) -> Result<ComparisonReport> {
    if g.p() != h.p() {
        return Err(Error::PrimeMismatch(g.p(), h.p()));
    }
    let fg = fingerprint(g, caps)?;
    let fh = fingerprint(h, caps)?;
    let mut report = compare_fingerprints(&fg, &fh);
    if report.is_distinguished() {
        return Ok(report);
    }
    let sg = dimension_section_groups(g.group())?;
    let sh = dimension_section_groups(h.group())?;
    for ((bounds, a), (_, b)) in sg.iter().zip(&sh) {
        if a.order() > DEFAULT_ISO_CAP {
            continue;
        }
        if !is_isomorphic_small(a, b, DEFAULT_ISO_CAP)? {
            let field = "dimension_sections".to_string();
            let label = Value::String(format!("D_{} / D_{} not isomorphic", bounds.0, bounds.1));
            report.differing_fields.push(field.clone());
            report.verdict = Verdict::Distinguished {
                field,
                left: label.clone(),
                right: label,
            };
            break;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, Family};

    fn alg(f: Family) -> GroupAlgebra {
        GroupAlgebra::new(build(&f).unwrap())
    }

    #[test]
    fn quaternion_and_dihedral_differ_in_kernel_sizes() {
        let d8 = alg(Family::Dihedral { order: 8 });
        let q8 = alg(Family::Quaternion { order: 8 });
        let r = compare(&d8, &q8, Caps::default()).unwrap();
        match &r.verdict {
            Verdict::Distinguished { field, .. } => assert!(
                r.differing_fields.contains(&"kernel_sizes".to_string()),
                "{field}"
            ),
            Verdict::Indistinguishable => panic!("D8 and Q8 not separated"),
        }
        assert_eq!(r.fields["kernel_sizes"].left["1,1"], Value::from(3));
        assert_eq!(r.fields["kernel_sizes"].right["1,1"], Value::from(1));
        let back = compare(&q8, &d8, Caps::default()).unwrap();
        assert_eq!(back, r.swapped());
    }

    #[test]
    fn a_group_is_indistinguishable_from_itself() {
        let a = alg(Family::Semidihedral { order: 16 });
        let b = alg(Family::Semidihedral { order: 16 });
        assert_eq!(
            compare(&a, &b, Caps::default()).unwrap().verdict,
            Verdict::Indistinguishable
        );
    }

    #[test]
    fn primes_must_match() {
        let a = alg(Family::Cyclic { p: 2, log_order: 1 });
        let b = alg(Family::Cyclic { p: 3, log_order: 1 });
        assert!(matches!(
            compare(&a, &b, Caps::default()),
            Err(Error::PrimeMismatch(2, 3))
        ));
    }
}
