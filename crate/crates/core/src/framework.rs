//! The framework data model: arguments with initial strengths, and the attack
//! and support relations between them.
//!
//! A [`Qbaf`] is immutable once built. Argument order is the order in which
//! arguments were declared (document order for parsed files); every
//! deterministic output of the crate follows it.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{EdgeKind, Error, Result};

/// An argument and its initial strength.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Argument {
    pub id: String,
    pub tau: f64,
}

impl Argument {
    pub fn new(id: impl Into<String>, tau: f64) -> Self {
        Self { id: id.into(), tau }
    }
}

/// A quantitative bipolar argumentation framework.
#[derive(Debug, Clone)]
pub struct Qbaf {
    arguments: Vec<Argument>,
    index: HashMap<String, usize>,
    attacks: Vec<(usize, usize)>,
    supports: Vec<(usize, usize)>,
    // Incoming edges per target, in edge declaration order.
    attackers: Vec<Vec<usize>>,
    supporters: Vec<Vec<usize>>,
}

impl PartialEq for Qbaf {
    fn eq(&self, other: &Self) -> bool {
        self.arguments == other.arguments && self.attacks == other.attacks && self.supports == other.supports
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    arguments: Vec<Argument>,
    attacks: Vec<(String, String)>,
    supports: Vec<(String, String)>,
}

impl Qbaf {
    /// Builds a framework from ids, validating every invariant.
    pub fn new<S: AsRef<str>>(arguments: Vec<Argument>, attacks: &[(S, S)], supports: &[(S, S)]) -> Result<Self> {
        let mut builder = QbafBuilder::new();
        for arg in arguments {
            builder.try_argument(arg.id, arg.tau)?;
        }
        for (kind, edges) in [(EdgeKind::Attack, attacks), (EdgeKind::Support, supports)] {
            for (from, to) in edges {
                let f = builder.lookup(from.as_ref())?;
                let t = builder.lookup(to.as_ref())?;
                builder.edge(kind, f, t);
            }
        }
        builder.build()
    }

    pub fn empty() -> Self {
        QbafBuilder::new().build().expect("empty framework is valid")
    }

    pub fn len(&self) -> usize {
        self.arguments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arguments.is_empty()
    }

    pub fn arguments(&self) -> &[Argument] {
        &self.arguments
    }

    pub fn argument(&self, idx: usize) -> &Argument {
        &self.arguments[idx]
    }

    pub fn id(&self, idx: usize) -> &str {
        &self.arguments[idx].id
    }

    pub fn tau(&self, idx: usize) -> f64 {
        self.arguments[idx].tau
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownArgument(id.to_string()))
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    /// Attack edges as (attacker, target) index pairs, in declaration order.
    pub fn attacks(&self) -> &[(usize, usize)] {
        &self.attacks
    }

    /// Support edges as (supporter, target) index pairs, in declaration order.
    pub fn supports(&self) -> &[(usize, usize)] {
        &self.supports
    }

    pub fn attackers_of(&self, idx: usize) -> &[usize] {
        &self.attackers[idx]
    }

    pub fn supporters_of(&self, idx: usize) -> &[usize] {
        &self.supporters[idx]
    }

    pub fn in_degree(&self, idx: usize) -> usize {
        self.attackers[idx].len() + self.supporters[idx].len()
    }

    pub fn edge_count(&self) -> usize {
        self.attacks.len() + self.supports.len()
    }

    /// Size measure |A| + |R| + |S|.
    pub fn size(&self) -> usize {
        self.len() + self.edge_count()
    }

    /// The attackers and supporters of `id`, in declaration order.
    pub fn parents(&self, id: &str) -> Result<(Vec<&str>, Vec<&str>)> {
        let idx = self.index_of(id)?;
        let names = |v: &[usize]| v.iter().map(|&i| self.id(i)).collect::<Vec<_>>();
        Ok((names(&self.attackers[idx]), names(&self.supporters[idx])))
    }

    /// Starts a builder pre-populated with this framework.
    pub fn to_builder(&self) -> QbafBuilder {
        let mut b = QbafBuilder::new();
        for arg in &self.arguments {
            b.argument(arg.id.clone(), arg.tau);
        }
        for &(f, t) in &self.attacks {
            b.attack(f, t);
        }
        for &(f, t) in &self.supports {
            b.support(f, t);
        }
        b
    }

    /// Parses the JSON file format.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Document = serde_json::from_str(text).map_err(|e| Error::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Self::new(doc.arguments, &doc.attacks, &doc.supports)
    }

    /// Serializes to the canonical (compact) JSON file format.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.document()).expect("framework documents always serialize")
    }
}

impl Qbaf {
    fn document(&self) -> Document {
        let pair = |&(f, t): &(usize, usize)| (self.id(f).to_string(), self.id(t).to_string());
        Document {
            arguments: self.arguments.clone(),
            attacks: self.attacks.iter().map(pair).collect(),
            supports: self.supports.iter().map(pair).collect(),
        }
    }
}

impl Serialize for Qbaf {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.document().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Qbaf {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = Document::deserialize(deserializer)?;
        Qbaf::new(doc.arguments, &doc.attacks, &doc.supports).map_err(serde::de::Error::custom)
    }
}

/// Parses a framework document.
pub fn parse_qbaf(text: &str) -> Result<Qbaf> {
    Qbaf::from_json(text)
}

/// Serializes a framework document.
pub fn serialize_qbaf(q: &Qbaf) -> String {
    q.to_json()
}

/// Incremental, index-based construction of a [`Qbaf`].
///
/// Validation of strengths, ids and duplicate edges is deferred to
/// [`QbafBuilder::build`].
#[derive(Debug, Clone, Default)]
pub struct QbafBuilder {
    arguments: Vec<Argument>,
    index: HashMap<String, usize>,
    duplicate_id: Option<String>,
    attacks: Vec<(usize, usize)>,
    supports: Vec<(usize, usize)>,
}

impl QbafBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.arguments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arguments.is_empty()
    }

    /// Adds an argument and returns its index.
    pub fn argument(&mut self, id: impl Into<String>, tau: f64) -> usize {
        let id = id.into();
        let idx = self.arguments.len();
        if self.index.insert(id.clone(), idx).is_some() && self.duplicate_id.is_none() {
            self.duplicate_id = Some(id.clone());
        }
        self.arguments.push(Argument { id, tau });
        idx
    }

    fn try_argument(&mut self, id: String, tau: f64) -> Result<usize> {
        if self.index.contains_key(&id) {
            return Err(Error::DuplicateArgument(id));
        }
        Ok(self.argument(id, tau))
    }

    pub fn lookup(&self, id: &str) -> Result<usize> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownArgument(id.to_string()))
    }

    pub fn tau(&self, idx: usize) -> f64 {
        self.arguments[idx].tau
    }

    pub fn set_tau(&mut self, idx: usize, tau: f64) {
        self.arguments[idx].tau = tau;
    }

    pub fn attack(&mut self, from: usize, to: usize) -> &mut Self {
        self.attacks.push((from, to));
        self
    }

    pub fn support(&mut self, from: usize, to: usize) -> &mut Self {
        self.supports.push((from, to));
        self
    }

    pub fn edge(&mut self, kind: EdgeKind, from: usize, to: usize) -> &mut Self {
        match kind {
            EdgeKind::Attack => self.attack(from, to),
            EdgeKind::Support => self.support(from, to),
        }
    }

    pub fn build(self) -> Result<Qbaf> {
        if let Some(id) = self.duplicate_id {
            return Err(Error::DuplicateArgument(id));
        }
        let n = self.arguments.len();
        for arg in &self.arguments {
            if arg.id.is_empty() {
                return Err(Error::EmptyId);
            }
            if !(0.0..=1.0).contains(&arg.tau) {
                return Err(Error::TauOutOfRange {
                    id: arg.id.clone(),
                    tau: arg.tau,
                });
            }
        }
        let mut attackers = vec![Vec::new(); n];
        let mut supporters = vec![Vec::new(); n];
        for (kind, edges, incoming) in [
            (EdgeKind::Attack, &self.attacks, &mut attackers),
            (EdgeKind::Support, &self.supports, &mut supporters),
        ] {
            let mut seen = HashSet::with_capacity(edges.len());
            for &(f, t) in edges {
                assert!(f < n && t < n, "edge endpoint out of range");
                if !seen.insert((f, t)) {
                    return Err(Error::DuplicateEdge {
                        kind,
                        from: self.arguments[f].id.clone(),
                        to: self.arguments[t].id.clone(),
                    });
                }
                incoming[t].push(f);
            }
        }
        Ok(Qbaf {
            arguments: self.arguments,
            index: self.index,
            attacks: self.attacks,
            supports: self.supports,
            attackers,
            supporters,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG1_LEFT: &str = r#"{"arguments":[{"id":"g","tau":0.5},{"id":"a1","tau":0.9},{"id":"s1","tau":0.1},{"id":"s2","tau":0.2}],"attacks":[["a1","g"]],"supports":[["s1","g"],["s2","g"]]}"#;

    #[test]
    fn parses_intro_framework() {
        let q = parse_qbaf(FIG1_LEFT).unwrap();
        assert_eq!(q.len(), 4);
        assert_eq!(q.tau(q.index_of("g").unwrap()), 0.5);
        let (att, sup) = q.parents("g").unwrap();
        assert_eq!(att, vec!["a1"]);
        assert_eq!(sup, vec!["s1", "s2"]);
        assert_eq!(serialize_qbaf(&q), FIG1_LEFT);
    }

    #[test]
    fn empty_document() {
        let text = r#"{"arguments":[],"attacks":[],"supports":[]}"#;
        let q = parse_qbaf(text).unwrap();
        assert!(q.is_empty());
        assert_eq!(serialize_qbaf(&q), text);
        assert_eq!(serialize_qbaf(&Qbaf::empty()), text);
    }

    #[test]
    fn rejects_bad_documents() {
        let unknown = r#"{"arguments":[{"id":"g","tau":0.5}],"attacks":[["x","g"]],"supports":[]}"#;
        assert_eq!(parse_qbaf(unknown).unwrap_err(), Error::UnknownArgument("x".into()));

        let tau = r#"{"arguments":[{"id":"g","tau":1.5}],"attacks":[],"supports":[]}"#;
        assert!(matches!(parse_qbaf(tau), Err(Error::TauOutOfRange { .. })));

        let dup = r#"{"arguments":[{"id":"g","tau":0.5},{"id":"g","tau":0.1}],"attacks":[],"supports":[]}"#;
        assert_eq!(parse_qbaf(dup).unwrap_err(), Error::DuplicateArgument("g".into()));

        let dup_edge = r#"{"arguments":[{"id":"a","tau":0.5},{"id":"g","tau":0.1}],"attacks":[["a","g"],["a","g"]],"supports":[]}"#;
        assert!(matches!(
            parse_qbaf(dup_edge),
            Err(Error::DuplicateEdge {
                kind: EdgeKind::Attack,
                ..
            })
        ));

        let unknown_key = r#"{"arguments":[],"attacks":[],"supports":[],"weights":[]}"#;
        assert!(matches!(parse_qbaf(unknown_key), Err(Error::Syntax { .. })));

        let empty_id = r#"{"arguments":[{"id":"","tau":0.5}],"attacks":[],"supports":[]}"#;
        assert_eq!(parse_qbaf(empty_id).unwrap_err(), Error::EmptyId);
    }

    #[test]
    fn syntax_error_reports_position() {
        let err = parse_qbaf("{\n  \"arguments\": [,]\n}").unwrap_err();
        match err {
            Error::Syntax { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn attack_and_support_on_same_pair_are_both_kept() {
        let q = Qbaf::new(
            vec![Argument::new("a", 1.0), Argument::new("b", 1.0)],
            &[("a", "b")],
            &[("a", "b")],
        )
        .unwrap();
        assert_eq!(q.in_degree(1), 2);
    }

    #[test]
    fn parents_edge_cases() {
        let q = Qbaf::new(
            vec![Argument::new("x", 0.3), Argument::new("lone", 0.2)],
            &[("x", "x")],
            &[],
        )
        .unwrap();
        assert_eq!(q.parents("x").unwrap(), (vec!["x"], vec![]));
        assert_eq!(q.parents("lone").unwrap(), (vec![], vec![]));
        assert!(q.parents("nope").is_err());
    }
}
