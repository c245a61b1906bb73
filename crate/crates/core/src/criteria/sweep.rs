//! Whole-group cross-validation and the sampled quotient sweep.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::classical::{classical_pattern_test, signed_permutation_of};
use super::kumar::KumarTable;
use super::pattern::PatternClassifier;
use super::{is_rationally_smooth_by_graph, is_rationally_smooth_oracle, is_smooth_oracle};
use crate::embeddings::EmbeddingChecker;
use crate::error::{Error, Result};
use crate::poincare::truncated_asymmetry_depth;
use crate::root_system::{Family, RootSystem};
use crate::subsystems::PatternWitness;
use crate::weyl::{Group, NodeSet, WeylElement};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Pattern,
    Embedded,
    Classical,
    Kumar,
    Poincare,
}

impl Method {
    pub const ALL: [Method; 5] = [Method::Pattern, Method::Embedded, Method::Classical, Method::Kumar, Method::Poincare];

    pub fn name(self) -> &'static str {
        match self {
            Method::Pattern => "pattern",
            Method::Embedded => "embedded",
            Method::Classical => "classical",
            Method::Kumar => "kumar",
            Method::Poincare => "poincare",
        }
    }

    /// Whether the method applies to the root system at all.
    pub fn applies_to(self, rs: &RootSystem, rational: bool) -> bool {
        match self {
            Method::Classical => matches!(rs.cartan_type().family, Family::A | Family::B | Family::C | Family::D),
            // palindromy decides smoothness only where it equals rational smoothness
            Method::Poincare => rational || rs.cartan_type().is_simply_laced(),
            _ => true,
        }
    }

    /// Whether the method needs the whole group enumerated.
    pub fn needs_group(self) -> bool {
        matches!(self, Method::Kumar | Method::Poincare)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown method {s:?}")))
    }
}

/// Verdict on one element, as reported by the command line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub element: String,
    #[serde(rename = "type")]
    pub type_label: String,
    pub smooth: bool,
    pub rationally_smooth: bool,
    pub witness: Option<PatternWitness>,
    pub methods_agreed: bool,
}

/// Classifiers for one root system, built lazily as methods are used.
pub struct Classifier {
    rs: Arc<RootSystem>,
    pattern: Option<PatternClassifier>,
    embedded: Option<EmbeddingChecker>,
}

impl Classifier {
    pub fn new(rs: &Arc<RootSystem>) -> Self {
        Classifier { rs: rs.clone(), pattern: None, embedded: None }
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn pattern(&mut self) -> Result<&PatternClassifier> {
        if self.pattern.is_none() {
            self.pattern = Some(PatternClassifier::new(&self.rs)?);
        }
        Ok(self.pattern.as_ref().unwrap())
    }

    pub fn embedded(&mut self) -> &EmbeddingChecker {
        self.embedded.get_or_insert_with(|| EmbeddingChecker::new(&self.rs))
    }

    /// `(verdict, witness)` for one method. Methods needing the group take
    /// it from `group`.
    pub fn decide(
        &mut self,
        w: &WeylElement,
        method: Method,
        rational: bool,
        group: Option<(&Group, &KumarTable)>,
    ) -> Result<(bool, Option<PatternWitness>)> {
        match method {
            Method::Pattern => {
                self.pattern()?;
            }
            Method::Embedded => {
                self.embedded();
            }
            _ => {}
        }
        self.decide_ref(w, method, rational, group)
    }

    /// As [`Classifier::decide`], for use from several threads once the
    /// classifier the method needs has been built.
    pub fn decide_ref(
        &self,
        w: &WeylElement,
        method: Method,
        rational: bool,
        group: Option<(&Group, &KumarTable)>,
    ) -> Result<(bool, Option<PatternWitness>)> {
        if !method.applies_to(&self.rs, rational) {
            return Err(Error::Parse(format!(
                "method {method} does not decide {} for {}",
                if rational { "rational smoothness" } else { "smoothness" },
                self.rs.label()
            )));
        }
        let need = || Error::Internal(format!("method {method} needs the enumerated group"));
        Ok(match method {
            Method::Pattern => {
                let p = self.pattern.as_ref().ok_or_else(|| Error::Internal("pattern classifier not built".into()))?;
                let wit = if rational { p.rationally_smooth(w) } else { p.smooth(w) };
                (wit.is_none(), wit)
            }
            Method::Embedded => {
                let e = self.embedded.as_ref().ok_or_else(|| Error::Internal("embedding checker not built".into()))?;
                let wit = if rational { e.rationally_smooth(w) } else { e.smooth(w) };
                (wit.is_none(), wit)
            }
            Method::Classical => {
                let perm = signed_permutation_of(w).ok_or_else(|| Error::Internal("not a signed permutation".into()))?;
                let f = self.rs.cartan_type().family;
                (classical_pattern_test(&perm, f, rational)?, None)
            }
            Method::Kumar => {
                let (g, k) = group.ok_or_else(need)?;
                let id = g.id_of(w);
                let v = if rational { is_rationally_smooth_oracle(g, id) } else { is_smooth_oracle(k, id) };
                (v, None)
            }
            Method::Poincare => {
                let (g, _) = group.ok_or_else(need)?;
                (is_rationally_smooth_oracle(g, g.id_of(w)), None)
            }
        })
    }
}

/// Outcome of running every applicable method over a whole group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossvalReport {
    #[serde(rename = "type")]
    pub type_label: String,
    pub elements: usize,
    pub singular: usize,
    pub rationally_singular: usize,
    pub methods: Vec<String>,
    /// `(element, description)` of the first disagreement, by element order.
    pub first_disagreement: Option<(String, String)>,
    pub disagreements: usize,
}

impl CrossvalReport {
    pub fn all_agree(&self) -> bool {
        self.disagreements == 0
    }
}

impl fmt::Display for CrossvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_disagreement {
            None => write!(f, "{} elements, all methods agree", self.elements),
            Some((w, what)) => write!(
                f,
                "{} elements, {} disagreements; first at {w}: {what}",
                self.elements, self.disagreements
            ),
        }
    }
}

/// Runs the stellar-pattern test (irredundant and full lists), the embedded
/// test, the classical test where it applies, Kumar's criterion, palindromy
/// and Bruhat-graph regularity on every element of `g`.
pub fn crossval(g: &Group) -> Result<CrossvalReport> {
    let rs = g.system();
    let pattern = PatternClassifier::new(rs)?;
    let embedded = EmbeddingChecker::new(rs);
    let kumar = KumarTable::new(g);
    let classical = Method::Classical.applies_to(rs, false);
    let mut methods = vec!["pattern", "pattern-full", "embedded"];
    if classical {
        methods.push("classical");
    }
    methods.extend(["kumar", "poincare", "bruhat-graph"]);

    let rows: Vec<Result<(bool, bool, Option<String>)>> = g
        .ids()
        .into_par_iter()
        .map(|id| {
            let w = g.element(id);
            let inv = w.inversion_set();
            let mut smooth = vec![
                ("pattern", pattern.find(inv, false, true).is_none()),
                ("pattern-full", pattern.find(inv, false, false).is_none()),
                ("embedded", !embedded.is_singular(inv, false)),
            ];
            let mut rational = vec![
                ("pattern", pattern.find(inv, true, true).is_none()),
                ("pattern-full", pattern.find(inv, true, false).is_none()),
                ("embedded", !embedded.is_singular(inv, true)),
            ];
            if classical {
                let perm = signed_permutation_of(w).ok_or_else(|| Error::Internal("not a signed permutation".into()))?;
                let f = rs.cartan_type().family;
                smooth.push(("classical", classical_pattern_test(&perm, f, false)?));
                rational.push(("classical", classical_pattern_test(&perm, f, true)?));
            }
            let s = is_smooth_oracle(&kumar, id);
            let r = is_rationally_smooth_oracle(g, id);
            smooth.push(("kumar", s));
            rational.push(("poincare", r));
            rational.push(("bruhat-graph", is_rationally_smooth_by_graph(g, id)));
            if rs.cartan_type().is_simply_laced() {
                // smoothness and rational smoothness coincide here
                smooth.push(("poincare", r));
            }
            let describe = |list: &[(&str, bool)], what: &str| -> Option<String> {
                let first = list[0].1;
                list.iter().any(|&(_, v)| v != first).then(|| {
                    let parts: Vec<String> = list.iter().map(|(m, v)| format!("{m}={v}")).collect();
                    format!("{what}: {}", parts.join(" "))
                })
            };
            let mut problem = describe(&smooth, "smooth").or_else(|| describe(&rational, "rationally smooth"));
            if problem.is_none() && s && !r {
                problem = Some("smooth but not rationally smooth".into());
            }
            Ok((s, r, problem))
        })
        .collect();
    let mut report = CrossvalReport {
        type_label: rs.label(),
        elements: g.size(),
        singular: 0,
        rationally_singular: 0,
        methods: methods.into_iter().map(String::from).collect(),
        first_disagreement: None,
        disagreements: 0,
    };
    for (id, row) in rows.into_iter().enumerate() {
        let (s, r, problem) = row?;
        report.singular += !s as usize;
        report.rationally_singular += !r as usize;
        if let Some(p) = problem {
            report.disagreements += 1;
            if report.first_disagreement.is_none() {
                report.first_disagreement = Some((g.element(id as u32).to_string(), p));
            }
        }
    }
    Ok(report)
}

/// Sampled products `u v` with `u` drawn from a list of smooth elements of a
/// parabolic subgroup and `v` a minimal coset representative.
pub struct QuotientSweep {
    pub rs: Arc<RootSystem>,
    pub parabolic: NodeSet,
    pub smooth_parabolic: Vec<WeylElement>,
    pub reps: Vec<WeylElement>,
}

/// Tallies from [`QuotientSweep::sample`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleReport {
    pub samples: usize,
    pub singular: usize,
    /// Largest asymmetry depth seen among singular samples.
    pub max_depth: usize,
    /// Singular samples whose polynomial looked symmetric up to the depth bound.
    pub undetected_singular: usize,
    /// Pattern-smooth samples whose polynomial was asymmetric within the bound.
    pub asymmetric_smooth: usize,
}

impl SampleReport {
    pub fn consistent(&self) -> bool {
        self.undetected_singular == 0 && self.asymmetric_smooth == 0
    }
}

impl QuotientSweep {
    pub fn new(rs: &Arc<RootSystem>, parabolic: NodeSet, smooth_parabolic: Vec<WeylElement>) -> Self {
        let reps = crate::weyl::min_coset_reps(rs, parabolic);
        QuotientSweep { rs: rs.clone(), parabolic, smooth_parabolic, reps }
    }

    pub fn product(&self, i: usize, j: usize) -> WeylElement {
        self.smooth_parabolic[i].mul(&self.reps[j])
    }

    /// Classifies `samples` random products by pattern and checks the
    /// polynomial's symmetry up to `depth` coefficients from each end.
    pub fn sample(&self, classifier: &PatternClassifier, samples: usize, seed: u64, depth: usize) -> SampleReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let picks: Vec<(usize, usize)> = (0..samples)
            .map(|_| (rng.gen_range(0..self.smooth_parabolic.len()), rng.gen_range(0..self.reps.len())))
            .collect();
        let rows: Vec<(bool, Option<usize>)> = picks
            .par_iter()
            .map(|&(i, j)| {
                let w = self.product(i, j);
                let singular = classifier.find(w.inversion_set(), false, true).is_some();
                (singular, truncated_asymmetry_depth(&w, depth))
            })
            .collect();
        let mut r = SampleReport { samples, ..Default::default() };
        for (singular, d) in rows {
            if singular {
                r.singular += 1;
                match d {
                    Some(d) => r.max_depth = r.max_depth.max(d),
                    None => r.undetected_singular += 1,
                }
            } else if d.is_some() {
                r.asymmetric_smooth += 1;
            }
        }
        r
    }
}

/// The parabolic `D7` inside `E8` obtained by deleting node 1, with the
/// smooth elements of `W(D7)` carried over along the diagram embedding.
pub fn e8_quotient_sweep() -> Result<QuotientSweep> {
    const D7_TO_E8: [usize; 7] = [8, 7, 6, 5, 4, 3, 2];
    let e8 = crate::models::system(crate::root_system::CartanType::new(Family::E, 8)?);
    let d7 = crate::root_system::build_arc(Family::D, 7)?;
    let smooth = super::classical::classical_smooth_elements(Family::D, 7, false)?;
    let elements: Vec<WeylElement> = smooth
        .par_iter()
        .map(|p| {
            let word = WeylElement::from_signed_permutation(&d7, p)?.reduced_word();
            let mapped: Vec<usize> = word.iter().map(|&s| D7_TO_E8[s - 1]).collect();
            WeylElement::from_word(&e8, &mapped)
        })
        .collect::<Result<_>>()?;
    Ok(QuotientSweep::new(&e8, NodeSet::all(8).without(0), elements))
}
