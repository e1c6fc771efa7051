//! Coupling instances: two labeled finite sets, a measure on each, and a
//! relation between them.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// The on-disk shape of an instance. Masses are strings so that they can be
/// written exactly (`"1/3"`, `"0.25"`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawInstance {
    #[serde(rename = "A")]
    pub a: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<String>,
    #[serde(rename = "P")]
    pub p: BTreeMap<String, String>,
    #[serde(rename = "P_prime")]
    pub p_prime: BTreeMap<String, String>,
    #[serde(rename = "R")]
    pub r: Vec<(String, String)>,
}

impl RawInstance {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            field: json_error_field(&e),
            message: e.to_string(),
        })
    }
}

fn json_error_field(e: &serde_json::Error) -> String {
    // serde reports "missing field `P`" / "unknown field `X`" without a path
    let msg = e.to_string();
    msg.split('`')
        .nth(1)
        .map(str::to_string)
        .unwrap_or_else(|| "<document>".to_string())
}

/// A validated instance. Sides are stored in declaration order; that order is
/// what every deterministic tie-break in the crate refers to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    a_labels: Vec<String>,
    b_labels: Vec<String>,
    p: Vec<Rational>,
    p_prime: Vec<Rational>,
    relation: BTreeSet<(usize, usize)>,
}

fn check_labels(side: char, labels: &[String]) -> Result<HashMap<&str, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, label) in labels.iter().enumerate() {
        if index.insert(label.as_str(), i).is_some() {
            return Err(Error::DuplicateLabel {
                side,
                label: label.clone(),
            });
        }
    }
    Ok(index)
}

fn check_masses(labels: &[String], masses: &[Rational]) -> Result<()> {
    for (label, mass) in labels.iter().zip(masses) {
        if mass.is_negative() {
            return Err(Error::NegativeMass {
                label: label.clone(),
                mass: mass.clone(),
            });
        }
    }
    Ok(())
}

fn check_totals(p: &[Rational], p_prime: &[Rational]) -> Result<()> {
    let a_total: Rational = p.iter().sum();
    let b_total: Rational = p_prime.iter().sum();
    if a_total != b_total {
        return Err(Error::UnbalancedTotals {
            a_total: Box::new(a_total),
            b_total: Box::new(b_total),
        });
    }
    Ok(())
}

/// Parse and check a raw instance.
pub fn validate_instance(raw: &RawInstance) -> Result<Instance> {
    let a_index = check_labels('A', &raw.a)?;
    let b_index = check_labels('B', &raw.b)?;

    let masses = |side: char,
                  field: &str,
                  labels: &[String],
                  index: &HashMap<&str, usize>,
                  given: &BTreeMap<String, String>|
     -> Result<Vec<Rational>> {
        if let Some(extra) = given.keys().find(|k| !index.contains_key(k.as_str())) {
            return Err(Error::UnknownMassLabel {
                side,
                label: extra.clone(),
            });
        }
        labels
            .iter()
            .map(|label| {
                let text = given.get(label).ok_or_else(|| Error::MissingMass {
                    side,
                    label: label.clone(),
                })?;
                text.parse::<Rational>().map_err(|e| Error::Parse {
                    field: format!("{field}.{label}"),
                    message: e.to_string(),
                })
            })
            .collect()
    };
    let p = masses('A', "P", &raw.a, &a_index, &raw.p)?;
    let p_prime = masses('B', "P_prime", &raw.b, &b_index, &raw.p_prime)?;

    let mut relation = BTreeSet::new();
    for (a, b) in &raw.r {
        match (a_index.get(a.as_str()), b_index.get(b.as_str())) {
            (Some(&i), Some(&j)) => {
                relation.insert((i, j));
            }
            _ => {
                return Err(Error::DanglingRelationPair {
                    a: a.clone(),
                    b: b.clone(),
                })
            }
        }
    }

    check_masses(&raw.a, &p)?;
    check_masses(&raw.b, &p_prime)?;
    check_totals(&p, &p_prime)?;

    Ok(Instance {
        a_labels: raw.a.clone(),
        b_labels: raw.b.clone(),
        p,
        p_prime,
        relation,
    })
}

impl Instance {
    /// Build an instance from index-based parts. The relation holds
    /// `(a_index, b_index)` pairs.
    pub fn new(
        a_labels: Vec<String>,
        b_labels: Vec<String>,
        p: Vec<Rational>,
        p_prime: Vec<Rational>,
        relation: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        check_labels('A', &a_labels)?;
        check_labels('B', &b_labels)?;
        if p.len() != a_labels.len() {
            return Err(Error::Parse {
                field: "P".into(),
                message: format!("{} masses for {} labels", p.len(), a_labels.len()),
            });
        }
        if p_prime.len() != b_labels.len() {
            return Err(Error::Parse {
                field: "P_prime".into(),
                message: format!("{} masses for {} labels", p_prime.len(), b_labels.len()),
            });
        }
        let mut rel = BTreeSet::new();
        for (i, j) in relation {
            if i >= a_labels.len() || j >= b_labels.len() {
                return Err(Error::DanglingRelationPair {
                    a: a_labels.get(i).cloned().unwrap_or_else(|| format!("#{i}")),
                    b: b_labels.get(j).cloned().unwrap_or_else(|| format!("#{j}")),
                });
            }
            rel.insert((i, j));
        }
        check_masses(&a_labels, &p)?;
        check_masses(&b_labels, &p_prime)?;
        check_totals(&p, &p_prime)?;
        Ok(Instance {
            a_labels,
            b_labels,
            p,
            p_prime,
            relation: rel,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        validate_instance(&RawInstance::from_json(text)?)
    }

    pub fn to_raw(&self) -> RawInstance {
        let masses =
            |labels: &[String], m: &[Rational]| labels.iter().cloned().zip(m.iter().map(|r| r.to_string())).collect();
        RawInstance {
            a: self.a_labels.clone(),
            b: self.b_labels.clone(),
            p: masses(&self.a_labels, &self.p),
            p_prime: masses(&self.b_labels, &self.p_prime),
            r: self
                .relation
                .iter()
                .map(|&(i, j)| (self.a_labels[i].clone(), self.b_labels[j].clone()))
                .collect(),
        }
    }

    pub fn a_labels(&self) -> &[String] {
        &self.a_labels
    }

    pub fn b_labels(&self) -> &[String] {
        &self.b_labels
    }

    pub fn p(&self) -> &[Rational] {
        &self.p
    }

    pub fn p_prime(&self) -> &[Rational] {
        &self.p_prime
    }

    pub fn relation(&self) -> &BTreeSet<(usize, usize)> {
        &self.relation
    }

    pub fn is_related(&self, a: usize, b: usize) -> bool {
        self.relation.contains(&(a, b))
    }

    pub fn total(&self) -> Rational {
        self.p.iter().sum()
    }

    /// Probability entry points require both measures to have mass 1.
    pub fn require_probability(&self) -> Result<()> {
        let total = self.total();
        if total != Rational::one() {
            return Err(Error::NotProbability { total });
        }
        Ok(())
    }

    /// The same sets and masses with `(a, b)` added to the relation.
    pub fn with_pair(&self, a: usize, b: usize) -> Instance {
        let mut out = self.clone();
        out.relation.insert((a, b));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn raw(json: &str) -> RawInstance {
        RawInstance::from_json(json).unwrap()
    }

    #[test]
    fn minimal_instance_is_valid() {
        let inst = validate_instance(&raw(
            r#"{"A":["a"],"B":["b"],"P":{"a":"1"},"P_prime":{"b":"1"},"R":[["a","b"]]}"#,
        ))
        .unwrap();
        assert_eq!(inst.total(), q(1, 1));
        assert!(inst.is_related(0, 0));
        inst.require_probability().unwrap();
    }

    #[test]
    fn unbalanced_totals_are_rejected() {
        let err = validate_instance(&raw(
            r#"{"A":["a"],"B":["b"],"P":{"a":"1"},"P_prime":{"b":"1/2"},"R":[]}"#,
        ))
        .unwrap_err();
        assert_eq!(
            err,
            Error::UnbalancedTotals {
                a_total: Box::new(q(1, 1)),
                b_total: Box::new(q(1, 2))
            }
        );
    }

    #[test]
    fn dangling_pair_is_rejected() {
        let err = validate_instance(&raw(
            r#"{"A":["a"],"B":["b"],"P":{"a":"1"},"P_prime":{"b":"1"},"R":[["a","zzz"]]}"#,
        ))
        .unwrap_err();
        assert_eq!(err.kind(), "DanglingRelationPair");
    }

    #[test]
    fn duplicate_labels_and_negative_masses() {
        let err = validate_instance(&raw(
            r#"{"A":["a","a"],"B":["b"],"P":{"a":"1"},"P_prime":{"b":"1"},"R":[]}"#,
        ))
        .unwrap_err();
        assert_eq!(err.kind(), "DuplicateLabel");
        let err = validate_instance(&raw(
            r#"{"A":["a","c"],"B":["b"],"P":{"a":"2","c":"-1"},"P_prime":{"b":"1"},"R":[]}"#,
        ))
        .unwrap_err();
        assert_eq!(err.kind(), "NegativeMass");
    }

    #[test]
    fn parse_errors_name_the_field() {
        let err = RawInstance::from_json(r#"{"A":["a"],"B":["b"],"P":{"a":"1"},"R":[]}"#).unwrap_err();
        assert!(matches!(err, Error::Parse { ref field, .. } if field == "P_prime"));
        let err = validate_instance(&raw(
            r#"{"A":["a"],"B":["b"],"P":{"a":"x"},"P_prime":{"b":"1"},"R":[]}"#,
        ))
        .unwrap_err();
        assert!(matches!(err, Error::Parse { ref field, .. } if field == "P.a"));
    }

    #[test]
    fn non_probability_totals_are_allowed_but_flagged() {
        let inst = validate_instance(&raw(
            r#"{"A":["a"],"B":["b"],"P":{"a":"2"},"P_prime":{"b":"2"},"R":[["a","b"]]}"#,
        ))
        .unwrap();
        assert_eq!(inst.require_probability().unwrap_err().kind(), "NotProbability");
    }

    #[test]
    fn raw_round_trip() {
        let inst = Instance::new(
            vec!["x".into(), "y".into()],
            vec!["u".into()],
            vec![q(1, 3), q(2, 3)],
            vec![q(1, 1)],
            [(0, 0), (1, 0)],
        )
        .unwrap();
        assert_eq!(validate_instance(&inst.to_raw()).unwrap(), inst);
    }
}
