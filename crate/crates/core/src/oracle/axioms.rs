//! Exhaustive checker for the independence axioms C1–C6 and C8.
//!
//! C1–C4 range over every family of pairwise disjoint subsets; C5 over
//! disjoint `X, Y, Z` and a single outside variable; C6 and C8 over single
//! variables and every admissible `Z`/`W`, exactly as the axioms quantify.
//! There is no C7.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{CachedOracle, IndependenceQuery, Oracle};
use crate::error::{Error, Result};
use crate::graph::NodeId;

pub const DEFAULT_AXIOM_CAP: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Axiom {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C8,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [
        Axiom::C1,
        Axiom::C2,
        Axiom::C3,
        Axiom::C4,
        Axiom::C5,
        Axiom::C6,
        Axiom::C8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::C1 => "symmetry",
            Axiom::C2 => "decomposition",
            Axiom::C3 => "strong union",
            Axiom::C4 => "intersection",
            Axiom::C5 => "transitivity",
            Axiom::C6 => "strong chordality",
            Axiom::C8 => "clique-separability",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for Axiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Axiom::ALL
            .into_iter()
            .find(|a| a.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::arg(format!("unknown axiom `{s}` (expected C1..C6 or C8)")))
    }
}

/// The instantiation that falsifies an axiom.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<NodeId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<NodeId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<NodeId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<NodeId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<NodeId>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<NodeId>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<NodeId>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<NodeId>>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomResult {
    pub axiom: Axiom,
    pub pass: bool,
    pub witness: Option<Witness>,
}

/// One entry per requested axiom, in `Axiom::ALL` order. Serializes as a
/// JSON array of `{"axiom", "pass", "witness"}` objects.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn get(&self, axiom: Axiom) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.axiom == axiom)
    }

    pub fn passes(&self, axiom: Axiom) -> Option<bool> {
        self.get(axiom).map(|r| r.pass)
    }
}

/// Checks each axiom in `which` exhaustively. Refuses universes above `cap`.
pub fn check_axioms(oracle: &dyn Oracle, which: &[Axiom], cap: usize) -> Result<AxiomReport> {
    let n = oracle.universe();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "axiom checking",
            n,
            cap,
        });
    }
    let mut wanted = which.to_vec();
    wanted.sort();
    wanted.dedup();
    let checker = Checker {
        o: CachedOracle::new(oracle),
        n,
    };
    let results = wanted
        .into_iter()
        .map(|axiom| {
            let witness = match axiom {
                Axiom::C1 => checker.c1(),
                Axiom::C2 => checker.c2(),
                Axiom::C3 => checker.c3(),
                Axiom::C4 => checker.c4(),
                Axiom::C5 => checker.c5(),
                Axiom::C6 => checker.c6(),
                Axiom::C8 => checker.c8(),
            };
            AxiomResult {
                axiom,
                pass: witness.is_none(),
                witness,
            }
        })
        .collect();
    Ok(AxiomReport { results })
}

struct Checker<O> {
    o: CachedOracle<O>,
    n: usize,
}

/// Sets built from one role assignment; index 0 means "unused".
struct Parts([Vec<NodeId>; 5]);

impl Parts {
    const X: usize = 1;
    const Y: usize = 2;
    const Z: usize = 3;
    const W: usize = 4;

    fn get(&self, i: usize) -> &[NodeId] {
        &self.0[i]
    }

    fn union(&self, a: usize, b: usize) -> Vec<NodeId> {
        let mut v = [self.get(a), self.get(b)].concat();
        v.sort_unstable();
        v
    }
}

/// Visits every assignment of nodes to `roles` disjoint parts plus "unused",
/// stopping at the first `Some`.
fn search_assignments<T>(
    n: usize,
    roles: usize,
    mut f: impl FnMut(&Parts) -> Option<T>,
) -> Option<T> {
    let base = roles + 1;
    let mut digits = vec![0usize; n];
    loop {
        let mut parts = Parts(Default::default());
        for (v, &d) in digits.iter().enumerate() {
            parts.0[d].push(v);
        }
        if let Some(t) = f(&parts) {
            return Some(t);
        }
        let mut i = 0;
        loop {
            if i == n {
                return None;
            }
            digits[i] += 1;
            if digits[i] < base {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

fn subsets(items: &[NodeId]) -> impl Iterator<Item = Vec<NodeId>> + '_ {
    (0u64..(1u64 << items.len())).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    })
}

fn with(base: &[NodeId], extra: &[NodeId]) -> Vec<NodeId> {
    let mut v = [base, extra].concat();
    v.sort_unstable();
    v
}

impl<O: Oracle> Checker<O> {
    fn ind(&self, x: &[NodeId], y: &[NodeId], z: &[NodeId]) -> bool {
        let q = IndependenceQuery::new(x.iter().copied(), y.iter().copied(), z.iter().copied())
            .expect("enumerated sets are disjoint and non-empty");
        self.o.independent(&q)
    }

    fn ind1(&self, a: NodeId, b: NodeId, z: &[NodeId]) -> bool {
        self.ind(&[a], &[b], z)
    }

    fn rest(&self, excluded: &[NodeId]) -> Vec<NodeId> {
        (0..self.n).filter(|v| !excluded.contains(v)).collect()
    }

    fn sets_witness(p: &Parts, with_w: bool, detail: String) -> Witness {
        Witness {
            x: Some(p.get(Parts::X).to_vec()),
            y: Some(p.get(Parts::Y).to_vec()),
            z: Some(p.get(Parts::Z).to_vec()),
            w: with_w.then(|| p.get(Parts::W).to_vec()),
            detail,
            ..Default::default()
        }
    }

    fn c1(&self) -> Option<Witness> {
        search_assignments(self.n, 3, |p| {
            let (x, y, z) = (p.get(Parts::X), p.get(Parts::Y), p.get(Parts::Z));
            if x.is_empty() || y.is_empty() {
                return None;
            }
            (self.ind(x, y, z) != self.ind(y, x, z))
                .then(|| Self::sets_witness(p, false, "I(X,Y|Z) and I(Y,X|Z) disagree".into()))
        })
    }

    fn c2(&self) -> Option<Witness> {
        search_assignments(self.n, 4, |p| {
            let (x, y, z, w) = (
                p.get(Parts::X),
                p.get(Parts::Y),
                p.get(Parts::Z),
                p.get(Parts::W),
            );
            if x.is_empty() || y.is_empty() || w.is_empty() {
                return None;
            }
            (self.ind(x, &p.union(Parts::Y, Parts::W), z) && !self.ind(x, y, z)).then(|| {
                Self::sets_witness(p, true, "I(X,Y∪W|Z) holds but I(X,Y|Z) does not".into())
            })
        })
    }

    fn c3(&self) -> Option<Witness> {
        search_assignments(self.n, 4, |p| {
            let (x, y, z) = (p.get(Parts::X), p.get(Parts::Y), p.get(Parts::Z));
            if x.is_empty() || y.is_empty() || p.get(Parts::W).is_empty() {
                return None;
            }
            (self.ind(x, y, z) && !self.ind(x, y, &p.union(Parts::Z, Parts::W))).then(|| {
                Self::sets_witness(p, true, "I(X,Y|Z) holds but I(X,Y|Z∪W) does not".into())
            })
        })
    }

    fn c4(&self) -> Option<Witness> {
        search_assignments(self.n, 4, |p| {
            let (x, y, z, w) = (
                p.get(Parts::X),
                p.get(Parts::Y),
                p.get(Parts::Z),
                p.get(Parts::W),
            );
            if x.is_empty() || y.is_empty() || w.is_empty() {
                return None;
            }
            let premise = self.ind(x, y, &p.union(Parts::Z, Parts::W))
                && self.ind(x, w, &p.union(Parts::Z, Parts::Y));
            (premise && !self.ind(x, &p.union(Parts::Y, Parts::W), z)).then(|| {
                Self::sets_witness(
                    p,
                    true,
                    "I(X,Y|Z∪W) and I(X,W|Z∪Y) hold but I(X,Y∪W|Z) does not".into(),
                )
            })
        })
    }

    fn c5(&self) -> Option<Witness> {
        search_assignments(self.n, 3, |p| {
            let (x, y, z) = (p.get(Parts::X), p.get(Parts::Y), p.get(Parts::Z));
            if x.is_empty() || y.is_empty() || !self.ind(x, y, z) {
                return None;
            }
            p.get(0).iter().find_map(|&g| {
                (!self.ind(x, &[g], z) && !self.ind(&[g], y, z)).then(|| Witness {
                    gamma: Some(g),
                    detail: "I(X,Y|Z) holds but neither I(X,γ|Z) nor I(γ,Y|Z)".into(),
                    ..Self::sets_witness(p, false, String::new())
                })
            })
        })
    }

    fn c6(&self) -> Option<Witness> {
        let n = self.n;
        for a in 0..n {
            for b in (a + 1)..n {
                for g in 0..n {
                    for d in (g + 1)..n {
                        if [a, b].contains(&g) || [a, b].contains(&d) {
                            continue;
                        }
                        if !self.ind1(g, d, &self.rest(&[g, d])) {
                            continue;
                        }
                        let rest = self.rest(&[a, b, g, d]);
                        for z in subsets(&rest) {
                            if self.ind1(a, b, &with(&z, &[g, d]))
                                && !self.ind1(a, b, &with(&z, &[g]))
                                && !self.ind1(a, b, &with(&z, &[d]))
                            {
                                return Some(Witness {
                                    alpha: Some(a),
                                    beta: Some(b),
                                    gamma: Some(g),
                                    delta: Some(d),
                                    z: Some(z),
                                    detail: "I(α,β|Z∪γ∪δ) and I(γ,δ|rest) hold but neither I(α,β|Z∪γ) nor I(α,β|Z∪δ)".into(),
                                    ..Default::default()
                                });
                            }
                        }
                    }
                }
            }
        }
        None
    }

    fn c8(&self) -> Option<Witness> {
        let n = self.n;
        // adjacency in the model's own graph: ¬I(γ,δ | U \ {γ,δ})
        let mut linked = vec![false; n * n];
        for g in 0..n {
            for d in (g + 1)..n {
                let l = !self.ind1(g, d, &self.rest(&[g, d]));
                linked[g * n + d] = l;
                linked[d * n + g] = l;
            }
        }
        for a in 0..n {
            for b in (a + 1)..n {
                let rest = self.rest(&[a, b]);
                if !self.ind1(a, b, &rest) {
                    continue;
                }
                let mut separators = Vec::new();
                let mut found = false;
                for w in subsets(&rest) {
                    if !self.ind1(a, b, &w) {
                        continue;
                    }
                    let complete = w.len() <= 1
                        || w.iter()
                            .enumerate()
                            .all(|(i, &g)| w[i + 1..].iter().all(|&d| linked[g * n + d]));
                    if complete {
                        found = true;
                        break;
                    }
                    separators.push(w);
                }
                if !found {
                    let listed: Vec<String> = separators
                        .iter()
                        .map(|s| {
                            let ids: Vec<String> = s.iter().map(|v| v.to_string()).collect();
                            format!("{{{}}}", ids.join(","))
                        })
                        .collect();
                    return Some(Witness {
                        alpha: Some(a),
                        beta: Some(b),
                        detail: format!(
                            "no complete separator; every separator is incomplete: {}",
                            listed.join(" ")
                        ),
                        ..Default::default()
                    });
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::cycle4;
    use crate::graph::Graph;
    use crate::oracle::SeparationOracle;

    #[test]
    fn chordal_graph_passes_everything() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        let r = check_axioms(&SeparationOracle::new(g), &Axiom::ALL, 6).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.results.len(), 7);
    }

    #[test]
    fn four_cycle_fails_only_c8() {
        let r = check_axioms(&SeparationOracle::new(cycle4()), &Axiom::ALL, 6).unwrap();
        for axiom in [Axiom::C1, Axiom::C2, Axiom::C3, Axiom::C4, Axiom::C5] {
            assert_eq!(r.passes(axiom), Some(true), "{axiom}");
        }
        let c8 = r.get(Axiom::C8).unwrap();
        assert!(!c8.pass);
        let w = c8.witness.as_ref().unwrap();
        assert_eq!((w.alpha, w.beta), (Some(0), Some(2)));
        assert!(w.detail.ends_with("{1,3}"), "{}", w.detail);
    }

    #[test]
    fn complete_graph_passes_vacuously() {
        let r = check_axioms(&SeparationOracle::new(Graph::complete(5)), &Axiom::ALL, 6).unwrap();
        assert!(r.all_pass());
    }

    #[test]
    fn non_graphical_model_caught() {
        // I(0,1|∅) true but I(0,1|{2}) false: violates strong union.
        struct Marginal;
        impl Oracle for Marginal {
            fn universe(&self) -> usize {
                3
            }
            fn independent(&self, q: &IndependenceQuery) -> bool {
                q.x() == [0] && q.y() == [1] && q.z().is_empty()
            }
        }
        let r = check_axioms(&Marginal, &[Axiom::C3], 6).unwrap();
        let w = r.get(Axiom::C3).unwrap().witness.clone().unwrap();
        let mut xy = [w.x.unwrap(), w.y.unwrap()];
        xy.sort();
        assert_eq!(xy, [vec![0], vec![1]]);
        assert_eq!(w.w, Some(vec![2]));
    }

    #[test]
    fn cap_enforced() {
        let o = SeparationOracle::new(Graph::new(7));
        assert!(matches!(
            check_axioms(&o, &[Axiom::C1], 6),
            Err(Error::CapExceeded { n: 7, cap: 6, .. })
        ));
    }

    #[test]
    fn report_json_shape() {
        let r = check_axioms(&SeparationOracle::new(cycle4()), &[Axiom::C8], 6).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v[0]["axiom"], "C8");
        assert_eq!(v[0]["pass"], false);
        assert_eq!(v[0]["witness"]["alpha"], 0);
        assert_eq!(v[0]["witness"]["beta"], 2);
        assert!("c6".parse::<Axiom>().is_ok());
        assert!("C7".parse::<Axiom>().is_err());
    }
}
