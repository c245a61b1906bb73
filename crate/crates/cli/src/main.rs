//! `schubert`: smoothness of Schubert varieties from the command line.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use schubert_core::criteria::sweep::Classifier;
use schubert_core::criteria::tables::{EXPECTED_COUNTS, RATIONAL_WORDS, SMOOTH_WORDS};
use schubert_core::criteria::{
    count_classical, crossval, is_abelian, is_fully_commutative, BadPatternTable, KumarTable, Method, Verdict,
};
use schubert_core::poincare::{poincare, recursive_factor};
use schubert_core::root_system::{build_arc, CartanType, Family, RootSystem};
use schubert_core::subsystems::{enumerate_subsystems, stellar_subsystems, stellar_types};
use schubert_core::weyl::{parse_word, BruhatMatrix, Group, WeylElement, DEFAULT_CAP, DEFAULT_MATRIX_CAP};
use schubert_core::Error;

#[derive(Parser)]
#[command(name = "schubert", version, about = "Decide smoothness of Schubert varieties via root-system patterns")]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one element.
    Check {
        #[command(flatten)]
        ty: TypeArgs,
        #[command(flatten)]
        element: ElementArgs,
        /// Report the rational-smoothness witness.
        #[arg(long)]
        rational: bool,
        #[arg(long, default_value = "pattern")]
        method: Method,
        #[command(flatten)]
        limits: Limits,
    },
    /// Count the elements of the whole group satisfying a predicate.
    Count {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long, value_enum, default_value = "smooth")]
        predicate: Predicate,
        #[arg(long, default_value = "pattern")]
        method: Method,
        #[command(flatten)]
        limits: Limits,
    },
    /// Poincaré polynomial of the Bruhat interval below an element.
    Poincare {
        #[command(flatten)]
        ty: TypeArgs,
        #[command(flatten)]
        element: ElementArgs,
        /// Also factor it by peeling leaves of the Dynkin diagram.
        #[arg(long)]
        factor: bool,
        #[command(flatten)]
        limits: Limits,
    },
    /// List root subsystems.
    Subsystems {
        #[command(flatten)]
        ty: TypeArgs,
        /// Only the stellar ones.
        #[arg(long)]
        stellar: bool,
        #[arg(long)]
        max_rank: Option<usize>,
    },
    /// Run every method on every element and compare.
    Crossval {
        #[command(flatten)]
        ty: TypeArgs,
        #[command(flatten)]
        limits: Limits,
    },
    /// Regenerate the bad-pattern counts and irredundant word lists.
    Tables,
}

#[derive(Args)]
struct TypeArgs {
    /// Family letter (A-G), or a full label such as F4.
    #[arg(long = "type")]
    family: String,
    #[arg(long)]
    rank: Option<usize>,
}

impl TypeArgs {
    fn system(&self) -> Result<Arc<RootSystem>, Error> {
        let t = match self.rank {
            Some(r) => {
                let f = self
                    .family
                    .chars()
                    .next()
                    .filter(|_| self.family.len() == 1)
                    .and_then(Family::from_char)
                    .ok_or_else(|| Error::Parse(format!("bad family {:?}", self.family)))?;
                CartanType::new(f, r)?
            }
            None => CartanType::parse(&self.family)?,
        };
        build_arc(t.family, t.rank)
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ElementArgs {
    /// Reduced or unreduced word in simple reflections, e.g. 2,1,3,2.
    #[arg(long, allow_hyphen_values = true)]
    word: Option<String>,
    /// Signed one-line notation for classical types, e.g. 3,-2,1.
    #[arg(long, allow_hyphen_values = true)]
    perm: Option<String>,
}

impl ElementArgs {
    fn element(&self, rs: &Arc<RootSystem>) -> Result<WeylElement, Error> {
        if let Some(w) = &self.word {
            return WeylElement::from_word(rs, &parse_word(w)?);
        }
        let p = self.perm.as_deref().unwrap_or_default();
        let perm: Vec<i64> = p
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad entry {t:?}"))))
            .collect::<Result<_, _>>()?;
        let family = rs.cartan_type().family;
        if !matches!(family, Family::A | Family::B | Family::C | Family::D) {
            return Err(Error::Parse("one-line notation needs a classical type".into()));
        }
        schubert_core::criteria::classical::validate(&perm, family)?;
        WeylElement::from_signed_permutation(rs, &perm)
    }
}

#[derive(Args)]
struct Limits {
    /// Largest group to enumerate.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
    /// Store and reuse Bruhat order matrices here.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

impl Limits {
    fn group(&self, rs: &Arc<RootSystem>) -> Result<Group, Error> {
        Group::with_cap(rs, self.cap)
    }

    /// Loads the Bruhat matrix from the cache, or computes and stores it.
    fn bruhat(&self, g: &Group) -> Result<(), Error> {
        let Some(dir) = &self.cache_dir else {
            g.try_bruhat()?;
            return Ok(());
        };
        let path = cache_path(dir, g);
        if let Some(m) = fs::read(&path).ok().and_then(|b| BruhatMatrix::from_bytes(&b)) {
            if g.install_bruhat(m).is_ok() {
                return Ok(());
            }
        }
        let m = g.try_bruhat()?;
        fs::create_dir_all(dir).map_err(|e| Error::Parse(format!("cache dir: {e}")))?;
        fs::write(&path, m.to_bytes()).map_err(|e| Error::Parse(format!("cache write: {e}")))?;
        Ok(())
    }
}

fn cache_path(dir: &Path, g: &Group) -> PathBuf {
    dir.join(format!("bruhat-{}-{}.bin", g.system().label(), env!("CARGO_PKG_VERSION")))
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Predicate {
    Smooth,
    Singular,
    RationallySmooth,
    RationallySingular,
    FullyCommutative,
    Abelian,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let mut out = String::new();
    let result = run(&cli, &mut out);
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::CapExceeded { .. } => 2,
                Error::SelfCheck(_) | Error::Internal(_) => 3,
                _ => 1,
            })
        }
    }
}

fn json<T: Serialize>(out: &mut String, v: &T) -> Result<(), Error> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Error::Internal(e.to_string()))?;
    out.push_str(&s);
    out.push('\n');
    Ok(())
}

macro_rules! line {
    ($out:expr, $($arg:tt)*) => {{
        $out.push_str(&format!($($arg)*));
        $out.push('\n');
    }};
}

fn run(cli: &Cli, out: &mut String) -> Result<(), Error> {
    match &cli.command {
        Command::Check { ty, element, rational, method, limits } => {
            let rs = ty.system()?;
            let w = element.element(&rs)?;
            let v = check(&rs, &w, *method, *rational, limits)?;
            if cli.json {
                return json(out, &v);
            }
            line!(out, "element: {} (length {})", display_word(&w), w.length());
            line!(out, "type: {}", v.type_label);
            line!(out, "smooth: {}", v.smooth);
            line!(out, "rationally smooth: {}", v.rationally_smooth);
            match &v.witness {
                Some(wit) => {
                    let rows: Vec<String> = wit.delta_simples.iter().map(|r| format!("{r:?}")).collect();
                    let word: Vec<String> = wit.flattened_word.iter().map(|s| s.to_string()).collect();
                    line!(
                        out,
                        "witness: {} {} simples {} flattened {}",
                        wit.criterion,
                        wit.delta_type,
                        rows.join(" "),
                        if word.is_empty() { "e".into() } else { word.join(",") }
                    );
                }
                None => line!(out, "witness: none"),
            }
            line!(out, "methods agreed: {}", v.methods_agreed);
        }
        Command::Count { ty, predicate, method, limits } => {
            let rs = ty.system()?;
            let n = count(&rs, *predicate, *method, limits)?;
            if cli.json {
                #[derive(Serialize)]
                struct Row<'a> {
                    #[serde(rename = "type")]
                    type_label: String,
                    predicate: &'a str,
                    method: Method,
                    count: usize,
                }
                let p = predicate.to_possible_value().unwrap();
                return json(out, &Row { type_label: rs.label(), predicate: p.get_name(), method: *method, count: n });
            }
            line!(out, "{n}");
        }
        Command::Poincare { ty, element, factor, limits } => {
            let rs = ty.system()?;
            let w = element.element(&rs)?;
            let g = limits.group(&rs)?;
            limits.bruhat(&g)?;
            let id = g.id_of(&w);
            let p = poincare(&g, id);
            let f = if *factor { Some(recursive_factor(&g, id)?) } else { None };
            if cli.json {
                #[derive(Serialize)]
                struct Step {
                    removed_node: usize,
                    inverted: bool,
                    quotient: Vec<u64>,
                }
                #[derive(Serialize)]
                struct Row {
                    element: String,
                    coefficients: Vec<u64>,
                    palindromic: bool,
                    #[serde(skip_serializing_if = "Option::is_none")]
                    factors: Option<Option<Vec<Step>>>,
                }
                let factors = f.map(|f| {
                    f.map(|f| {
                        f.steps
                            .iter()
                            .map(|s| Step {
                                removed_node: s.removed_node + 1,
                                inverted: s.inverted,
                                quotient: s.quotient.coeffs.clone(),
                            })
                            .collect()
                    })
                });
                let row = Row {
                    element: w.to_string(),
                    coefficients: p.coeffs.clone(),
                    palindromic: p.is_palindromic(),
                    factors,
                };
                return json(out, &row);
            }
            line!(out, "element: {} (length {})", display_word(&w), w.length());
            line!(out, "coefficients: {p}");
            line!(out, "palindromic: {}", p.is_palindromic());
            match f {
                None => {}
                Some(None) => line!(out, "factorization: none"),
                Some(Some(f)) => {
                    for s in &f.steps {
                        let which = if s.inverted { "inverse" } else { "element" };
                        line!(out, "peel node {} ({which}): {}", s.removed_node + 1, s.quotient);
                    }
                    line!(out, "product matches: {}", f.product() == p);
                }
            }
        }
        Command::Subsystems { ty, stellar, max_rank } => {
            let rs = ty.system()?;
            let subs = if *stellar {
                stellar_subsystems(&rs)?
            } else {
                enumerate_subsystems(&rs, max_rank.unwrap_or(rs.rank()))?
            };
            let subs: Vec<_> = subs.into_iter().filter(|d| max_rank.is_none_or(|m| d.rank() <= m)).collect();
            if cli.json {
                #[derive(Serialize)]
                struct Row {
                    #[serde(rename = "type")]
                    type_label: String,
                    simples: Vec<Vec<i64>>,
                }
                let rows: Vec<Row> = subs
                    .iter()
                    .map(|d| Row { type_label: d.kind().to_string(), simples: d.simple_coords(&rs) })
                    .collect();
                return json(out, &rows);
            }
            for d in &subs {
                line!(out, "{}", d.kind());
                for row in d.simple_coords(&rs) {
                    let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                    line!(out, "  {}", r.join(" "));
                }
            }
            eprintln!("{} subsystems", subs.len());
        }
        Command::Crossval { ty, limits } => {
            let rs = ty.system()?;
            let g = limits.group(&rs)?;
            limits.bruhat(&g)?;
            let report = crossval(&g)?;
            if cli.json {
                json(out, &report)?;
            } else {
                line!(out, "{report}");
            }
            if !report.all_agree() {
                return Err(Error::SelfCheck(format!("{}: methods disagree", report.type_label)));
            }
        }
        Command::Tables => tables(cli.json, out)?,
    }
    Ok(())
}

fn display_word(w: &WeylElement) -> String {
    if w.is_identity() {
        "e".into()
    } else {
        w.to_string()
    }
}

/// Verdict from `method`, compared against every other method that applies
/// and whose group fits the Bruhat matrix budget.
fn check(rs: &Arc<RootSystem>, w: &WeylElement, method: Method, rational: bool, limits: &Limits) -> Result<Verdict, Error> {
    let order = rs.cartan_type().group_order();
    let fits = order <= limits.cap && order <= DEFAULT_MATRIX_CAP;
    let group = if fits || method.needs_group() {
        let g = limits.group(rs)?;
        limits.bruhat(&g)?;
        Some(g)
    } else {
        None
    };
    let kumar = group.as_ref().map(KumarTable::new);
    let with_group = group.as_ref().zip(kumar.as_ref());
    let mut c = Classifier::new(rs);

    let (smooth, smooth_wit) = c.decide(w, method, false, with_group).or_else(|e| fallback(e, &mut c, w, false))?;
    let (rat, rat_wit) = c.decide(w, method, true, with_group).or_else(|e| fallback(e, &mut c, w, true))?;
    let mut agreed = true;
    for m in Method::ALL {
        if m == method || (m.needs_group() && with_group.is_none()) {
            continue;
        }
        for (r, expected) in [(false, smooth), (true, rat)] {
            if m.applies_to(rs, r) {
                agreed &= c.decide(w, m, r, with_group)?.0 == expected;
            }
        }
    }
    let mut witness = if rational { rat_wit } else { smooth_wit };
    if witness.is_none() && !(if rational { rat } else { smooth }) {
        witness = c.decide(w, Method::Pattern, rational, None)?.1;
    }
    Ok(Verdict {
        element: w.to_string(),
        type_label: rs.label(),
        smooth,
        rationally_smooth: rat,
        witness,
        methods_agreed: agreed,
    })
}

/// Falls back to the pattern test for a property the chosen method cannot
/// decide, such as smoothness by palindromy in a doubly-laced type.
fn fallback(
    e: Error,
    c: &mut Classifier,
    w: &WeylElement,
    rational: bool,
) -> Result<(bool, Option<schubert_core::subsystems::PatternWitness>), Error> {
    match e {
        Error::Parse(_) => c.decide(w, Method::Pattern, rational, None),
        e => Err(e),
    }
}

fn count(rs: &Arc<RootSystem>, predicate: Predicate, method: Method, limits: &Limits) -> Result<usize, Error> {
    let rational = matches!(predicate, Predicate::RationallySmooth | Predicate::RationallySingular);
    let want_good = matches!(predicate, Predicate::Smooth | Predicate::RationallySmooth);
    let ty = rs.cartan_type();
    if method == Method::Classical && matches!(predicate, Predicate::Smooth | Predicate::Singular | Predicate::RationallySmooth | Predicate::RationallySingular)
    {
        if !Method::Classical.applies_to(rs, rational) {
            return Err(Error::Parse(format!("classical method does not apply to {}", rs.label())));
        }
        // one-line notation counts do not need the group
        let n = rs.dim();
        let good = count_classical(ty.family, n, rational)?;
        return Ok(if want_good { good } else { ty.group_order() as usize - good });
    }
    let g = limits.group(rs)?;
    match predicate {
        Predicate::FullyCommutative => {
            let hits: Vec<bool> =
                g.elements().par_iter().map(is_fully_commutative).collect::<Result<_, _>>()?;
            return Ok(hits.into_iter().filter(|&b| b).count());
        }
        Predicate::Abelian => return Ok(g.elements().par_iter().filter(|w| is_abelian(w)).count()),
        _ => {}
    }
    if !method.applies_to(rs, rational) {
        return Err(Error::Parse(format!("method {method} does not decide this predicate for {}", rs.label())));
    }
    let kumar = if method.needs_group() {
        limits.bruhat(&g)?;
        Some(KumarTable::new(&g))
    } else {
        None
    };
    let mut c = Classifier::new(rs);
    match method {
        Method::Pattern => {
            c.pattern()?;
        }
        Method::Embedded => {
            c.embedded();
        }
        _ => {}
    }
    let c = &c;
    let with_group = kumar.as_ref().map(|k| (&g, k));
    let good: Vec<bool> = g
        .elements()
        .par_iter()
        .map(|w| decide_shared(c, w, method, rational, with_group))
        .collect::<Result<_, _>>()?;
    let good = good.into_iter().filter(|&b| b).count();
    Ok(if want_good { good } else { g.size() - good })
}

fn decide_shared(
    c: &Classifier,
    w: &WeylElement,
    method: Method,
    rational: bool,
    group: Option<(&Group, &KumarTable)>,
) -> Result<bool, Error> {
    c.decide_ref(w, method, rational, group).map(|(v, _)| v)
}

fn tables(as_json: bool, out: &mut String) -> Result<(), Error> {
    let t = BadPatternTable::shared()?;
    #[derive(Serialize)]
    struct Row {
        #[serde(rename = "type")]
        type_label: String,
        non_smooth: usize,
        non_rationally_smooth: usize,
        smooth_patterns: Vec<String>,
        rational_patterns: Vec<String>,
    }
    let mut rows = Vec::new();
    for ty in stellar_types() {
        let tt = t.get(ty).ok_or_else(|| Error::SelfCheck(format!("no table for {ty}")))?;
        let g = &tt.model.group;
        let words = |ids: &[u32]| -> Vec<String> { ids.iter().map(|&w| g.element(w).to_string()).collect() };
        rows.push(Row {
            type_label: ty.to_string(),
            non_smooth: tt.smooth_bad.len(),
            non_rationally_smooth: tt.rational_bad.len(),
            smooth_patterns: words(&tt.smooth_minimal),
            rational_patterns: words(&tt.rational_minimal),
        });
    }
    if as_json {
        return json(out, &rows);
    }
    line!(out, "{:<6}{:>12}{:>24}{:>12}{:>20}", "type", "non-smooth", "non-rationally-smooth", "patterns", "rational patterns");
    for r in &rows {
        line!(
            out,
            "{:<6}{:>12}{:>24}{:>12}{:>20}",
            r.type_label,
            r.non_smooth,
            r.non_rationally_smooth,
            r.smooth_patterns.len(),
            r.rational_patterns.len()
        );
    }
    let published = |list: &[(Family, usize, &[&str])], ty: CartanType| -> Option<String> {
        list.iter().find(|e| e.0 == ty.family && e.1 == ty.rank).map(|e| e.2.join("; "))
    };
    line!(out, "");
    line!(out, "irredundant patterns for smoothness:");
    for r in &rows {
        let ty = CartanType::parse(&r.type_label)?;
        line!(out, "  {}: {}", r.type_label, published(&SMOOTH_WORDS, ty).unwrap_or_default());
    }
    line!(out, "irredundant patterns for rational smoothness:");
    for r in &rows {
        let ty = CartanType::parse(&r.type_label)?;
        if let Some(p) = published(&RATIONAL_WORDS, ty) {
            line!(out, "  {}: {}", r.type_label, p);
        }
    }
    debug_assert_eq!(rows.len(), EXPECTED_COUNTS.len());
    Ok(())
}
