//! Outcome record for a single identity check.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bigmath::LaurentPoly;

/// One checked identity instance: which check, at which parameters, and
/// whether both sides agreed. The rendered sides are attached only on
/// failure, where they are the evidence worth reading.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub params: BTreeMap<String, i64>,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
}

impl IdentityReport {
    pub(crate) fn compare(
        identity: &str,
        params: &[(&str, i64)],
        lhs: &LaurentPoly,
        rhs: &LaurentPoly,
    ) -> Self {
        let holds = lhs == rhs;
        IdentityReport {
            identity: identity.to_owned(),
            params: params.iter().map(|(k, v)| ((*k).to_owned(), *v)).collect(),
            holds,
            lhs: (!holds).then(|| lhs.to_string()),
            rhs: (!holds).then(|| rhs.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failure_attaches_both_sides() {
        let a = LaurentPoly::from_coeffs(0, [1, 1]);
        let ok = IdentityReport::compare("x", &[("n", 2)], &a, &a);
        assert!(ok.holds);
        assert_eq!(ok.lhs, None);
        assert_eq!(
            serde_json::to_string(&ok).unwrap(),
            r#"{"identity":"x","params":{"n":2},"holds":true}"#
        );

        let bad = IdentityReport::compare("x", &[("n", 2), ("r", 1)], &a, &LaurentPoly::one());
        assert!(!bad.holds);
        assert_eq!(bad.lhs.as_deref(), Some("1 + q"));
        assert_eq!(bad.rhs.as_deref(), Some("1"));
        let round: IdentityReport =
            serde_json::from_str(&serde_json::to_string(&bad).unwrap()).unwrap();
        assert_eq!(round, bad);
    }
}
