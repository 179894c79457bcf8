//! The `threepage` command line.
//!
//! Exit codes: 0 success, proved or admissible; 1 invalid input; 2 unknown
//! (search budget exhausted); 3 refuted, not admissible or a failed check.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::encoder::encode_diagram;
use crate::fixtures;
use crate::pages::{decode, to_link_diagram, ArcEnd, LocalPicture, Page, PictureTable, Side};
use crate::planar::PlanarMarkedDiagram;
use crate::relations::{enumerate_relations, redundant_relations, Family, RelationInstance, RuleSet, Tier};
use crate::safety::{check_relations, SafetyOptions};
use crate::search::{equivalent, is_central, simplify, Outcome, Proof, SearchBudget, Verdict};
use crate::surface::{
    admissible, euler_characteristic, is_trivial_link, linking_matrix, normalized_bracket, resolve, resolve_mixed,
    same_up_to_orientation, Admissibility, ResolutionSign, Triviality,
};
use crate::word::{parse_word, Kind, Letter, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_REFUTED: i32 = 3;

#[derive(Parser)]
#[command(name = "threepage", version, about = "Words for marked graphs and 2-links in the 3-page book")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Json {
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Budget {
    /// Relation tier: classical, singular or full.
    #[arg(long, default_value = "full")]
    tier: Tier,
    /// States explored before giving up (default 2000000, or THREEPAGE_MAX_STATES).
    #[arg(long)]
    max_states: Option<usize>,
    /// Longest intermediate word (default: longest input plus 8).
    #[arg(long)]
    max_length: Option<usize>,
}

impl Budget {
    fn budget(&self) -> SearchBudget {
        let mut b = SearchBudget::from_env();
        if let Some(n) = self.max_states {
            b = b.with_max_states(n);
        }
        if let Some(n) = self.max_length {
            b = b.with_max_word_length(n);
        }
        b
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check a word and print it in normal spacing.
    Parse {
        word: String,
        #[command(flatten)]
        out: Json,
    },
    /// Decode a word into arcs, singular points and curves.
    Decode {
        word: String,
        #[command(flatten)]
        out: Json,
    },
    /// Resolve every singular point the same way.
    Resolve {
        word: String,
        /// pos deletes each x, neg replaces x_i by c_i a_i.
        #[arg(long, conflicts_with = "mixed", required_unless_present = "mixed")]
        sign: Option<ResolutionSign>,
        /// Experimental: one sign per singular point, comma separated.
        #[arg(long, value_delimiter = ',')]
        mixed: Option<Vec<ResolutionSign>>,
        #[command(flatten)]
        out: Json,
    },
    /// Euler characteristic of the represented surface.
    Chi {
        word: String,
        #[command(flatten)]
        out: Json,
    },
    /// Curve counts, Euler characteristic, triviality of both resolutions, brackets.
    Invariants {
        word: String,
        /// States for each triviality search.
        #[arg(long)]
        max_states: Option<usize>,
        #[command(flatten)]
        out: Json,
    },
    /// Are both resolutions unlinks?
    Admissible {
        word: String,
        #[arg(long)]
        max_states: Option<usize>,
        #[command(flatten)]
        out: Json,
    },
    /// Bounded search for a rewrite between two words.
    Equiv {
        w1: String,
        w2: String,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        out: Json,
    },
    /// Smallest word found in the class of a word.
    Simplify {
        word: String,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        out: Json,
    },
    /// Does a word commute with all 15 generators?
    Central {
        word: String,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        out: Json,
    },
    /// Print the defining relations, one per line.
    Relations {
        /// One line per relation (the default).
        #[arg(long)]
        list: bool,
        #[arg(long, default_value = "full")]
        tier: Tier,
        /// The derivable relations left out of the presentation instead.
        #[arg(long)]
        redundant: bool,
        #[command(flatten)]
        out: Json,
    },
    /// Encode a planar marked diagram given as JSON.
    Encode {
        #[arg(long)]
        input: std::path::PathBuf,
        #[command(flatten)]
        out: Json,
    },
    /// Relation-safety suite and fixture checks.
    Selftest {
        /// Random contexts per relation.
        #[arg(long, default_value_t = 200)]
        contexts: usize,
        /// Also compare admissibility, linking and brackets in every context.
        #[arg(long)]
        semantic: bool,
        #[command(flatten)]
        out: Json,
    },
}

/// Run with process arguments (the first one is the program name) and the
/// standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// [`run`] writing to the given streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

/// Invalid input, reported on the error stream.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure(e.to_string())
    }
}

type Res = Result<i32, Failure>;

fn word(text: &str) -> Result<Word, Failure> {
    Ok(parse_word(text)?)
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value)?;
    writeln!(out, "{text}")?;
    Ok(())
}

fn outcome_code(o: Outcome) -> i32 {
    match o {
        Outcome::Proved => EXIT_OK,
        Outcome::Unknown => EXIT_UNKNOWN,
        Outcome::Refuted => EXIT_REFUTED,
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Res {
    match cmd {
        Command::Parse { word: w, out: j } => parse(&word(&w)?, j.json, out),
        Command::Decode { word: w, out: j } => decode_cmd(&word(&w)?, j.json, out),
        Command::Resolve {
            word: w,
            sign,
            mixed,
            out: j,
        } => resolve_cmd(&word(&w)?, sign, mixed, j.json, out),
        Command::Chi { word: w, out: j } => {
            let chi = euler_characteristic(&word(&w)?)?;
            if j.json {
                emit(out, &serde_json::json!({ "euler_characteristic": chi }))?;
            } else {
                writeln!(out, "{chi}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Invariants {
            word: w,
            max_states,
            out: j,
        } => invariants(&word(&w)?, budget_with(max_states), j.json, out),
        Command::Admissible {
            word: w,
            max_states,
            out: j,
        } => admissible_cmd(&word(&w)?, budget_with(max_states), j.json, out),
        Command::Equiv { w1, w2, budget, out: j } => {
            let (w1, w2) = (word(&w1)?, word(&w2)?);
            let v = equivalent(&w1, &w2, RuleSet::from(budget.tier), &budget.budget());
            report_verdict(&w1, &w2, &v, j.json, out)?;
            Ok(outcome_code(v.outcome()))
        }
        Command::Simplify { word: w, budget, out: j } => {
            let w = word(&w)?;
            let s = simplify(&w, RuleSet::from(budget.tier), &budget.budget());
            if j.json {
                emit(
                    out,
                    &SimplifyJson {
                        input: w.to_string(),
                        word: s.word.to_string(),
                        length: s.word.len(),
                        proof: proof_json(&s.proof, &w),
                    },
                )?;
            } else {
                writeln!(out, "{}", show(&s.word))?;
                write_trace(out, &s.proof, &w)?;
            }
            Ok(EXIT_OK)
        }
        Command::Central { word: w, budget, out: j } => central(&word(&w)?, &budget, j.json, out),
        Command::Relations {
            list: _,
            tier,
            redundant,
            out: j,
        } => {
            let rels: Vec<&RelationInstance> = if redundant {
                redundant_relations().iter().filter(|r| r.in_tier(tier)).collect()
            } else {
                enumerate_relations(tier).iter().collect()
            };
            if j.json {
                let items: Vec<RelationJson> = rels.iter().map(|r| relation_json(r)).collect();
                emit(out, &items)?;
            } else {
                for r in rels {
                    writeln!(out, "{r}")?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Encode { input, out: j } => {
            let text = std::fs::read_to_string(&input).map_err(|e| Failure(format!("{}: {e}", input.display())))?;
            let d = PlanarMarkedDiagram::from_json(&text)?;
            d.validate()?;
            let w = encode_diagram(&d)?;
            if j.json {
                emit(
                    out,
                    &EncodeJson {
                        word: w.to_string(),
                        length: w.len(),
                        crossings: d.crossing_count(),
                        singular_points: d.singular_count(),
                        components: d.component_count()?,
                    },
                )?;
            } else {
                writeln!(out, "{}", show(&w))?;
            }
            Ok(EXIT_OK)
        }
        Command::Selftest {
            contexts,
            semantic,
            out: j,
        } => selftest(contexts, semantic, j.json, out),
    }
}

fn budget_with(max_states: Option<usize>) -> SearchBudget {
    let b = SearchBudget::from_env();
    match max_states {
        Some(n) => b.with_max_states(n),
        None => b,
    }
}

/// The empty word prints as `1`.
fn show(w: &Word) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.to_string()
    }
}

fn parse(w: &Word, json: bool, out: &mut dyn Write) -> Res {
    if json {
        emit(
            out,
            &ParseJson {
                word: w.to_string(),
                letters: w.letters().to_vec(),
                length: w.len(),
                singular_letters: w.singular_count(),
            },
        )?;
    } else {
        writeln!(out, "{}", show(w))?;
    }
    Ok(EXIT_OK)
}

fn decode_cmd(w: &Word, json: bool, out: &mut dyn Write) -> Res {
    let g = decode(w)?;
    if json {
        emit(out, &g)?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "points {}", w.len())?;
    for page in [Page::P0, Page::P1, Page::P2] {
        let arcs: Vec<String> = g
            .arcs
            .iter()
            .filter(|a| a.page == page)
            .map(|a| format!("{}-{}", a.left.point, a.right.point))
            .collect();
        writeln!(out, "{page} {}", arcs.join(" "))?;
    }
    for s in &g.singular_points {
        writeln!(out, "singular {}", s.point)?;
    }
    writeln!(out, "components {}", g.component_count())?;
    for c in &g.components {
        let pts: Vec<String> = c.points.iter().map(|p| p.to_string()).collect();
        writeln!(out, "  {}", pts.join(" "))?;
    }
    Ok(EXIT_OK)
}

fn resolve_cmd(
    w: &Word,
    sign: Option<ResolutionSign>,
    mixed: Option<Vec<ResolutionSign>>,
    json: bool,
    out: &mut dyn Write,
) -> Res {
    let r = match (sign, mixed) {
        (Some(s), _) => resolve(w, s),
        (None, Some(signs)) => {
            if signs.len() != w.singular_count() {
                return Err(Failure(format!(
                    "{} signs given for {} singular letters",
                    signs.len(),
                    w.singular_count()
                )));
            }
            resolve_mixed(w, &signs)
        }
        (None, None) => unreachable!("clap requires one of the two"),
    };
    if json {
        emit(
            out,
            &ResolveJson {
                word: r.to_string(),
                length: r.len(),
            },
        )?;
    } else {
        writeln!(out, "{}", show(&r))?;
    }
    Ok(EXIT_OK)
}

fn triviality_json(t: &Triviality, w: &Word) -> TrivialityJson {
    match t {
        Triviality::CertifiedTrivial(p) => TrivialityJson {
            verdict: t.label(),
            proof: Some(proof_json(p, w)),
            witness: None,
        },
        Triviality::CertifiedNontrivial(wit) => TrivialityJson {
            verdict: t.label(),
            proof: None,
            witness: Some(format!("{}: {} vs {}", wit.invariant, wit.left, wit.right)),
        },
        Triviality::Unknown => TrivialityJson {
            verdict: t.label(),
            proof: None,
            witness: None,
        },
    }
}

fn bracket_of(w: &Word) -> Option<String> {
    let d = to_link_diagram(w).ok()?;
    normalized_bracket(&d).ok().map(|b| b.to_string())
}

fn invariants(w: &Word, budget: SearchBudget, json: bool, out: &mut dyn Write) -> Res {
    let g = decode(w)?;
    let chi = euler_characteristic(w)?;
    let mut resolutions = Vec::new();
    for sign in [ResolutionSign::Positive, ResolutionSign::Negative] {
        let r = resolve(w, sign);
        let t = is_trivial_link(&r, &budget)?;
        resolutions.push(ResolutionJson {
            sign: sign.to_string(),
            word: r.to_string(),
            components: decode(&r)?.component_count(),
            triviality: triviality_json(&t, &r),
            bracket: bracket_of(&r),
        });
    }
    let classical = w.is_classical();
    let inv = InvariantsJson {
        word: w.to_string(),
        length: w.len(),
        components: g.component_count(),
        singular_points: g.singular_count(),
        euler_characteristic: chi,
        resolutions,
        linking_matrix: classical.then(|| to_link_diagram(w).map(|d| linking_matrix(&d))).transpose()?,
        bracket: if classical { bracket_of(w) } else { None },
    };
    if json {
        emit(out, &inv)?;
    } else {
        writeln!(out, "components {}", inv.components)?;
        writeln!(out, "singular points {}", inv.singular_points)?;
        writeln!(out, "euler characteristic {}", inv.euler_characteristic)?;
        for r in &inv.resolutions {
            write!(out, "resolution {}: {} components, {}", r.sign, r.components, r.triviality.verdict)?;
            if let Some(b) = &r.bracket {
                write!(out, ", bracket {b}")?;
            }
            writeln!(out)?;
        }
        if let Some(m) = &inv.linking_matrix {
            writeln!(out, "linking matrix {m:?}")?;
        }
        if let Some(b) = &inv.bracket {
            writeln!(out, "bracket {b}")?;
        }
    }
    Ok(EXIT_OK)
}

fn admissible_cmd(w: &Word, budget: SearchBudget, json: bool, out: &mut dyn Write) -> Res {
    let rep = admissible(w, &budget)?;
    let (rp, rn) = (resolve(w, ResolutionSign::Positive), resolve(w, ResolutionSign::Negative));
    if json {
        emit(
            out,
            &AdmissibleJson {
                verdict: rep.overall.to_string(),
                positive: triviality_json(&rep.positive, &rp),
                negative: triviality_json(&rep.negative, &rn),
            },
        )?;
    } else {
        writeln!(out, "{}", rep.overall)?;
        for (sign, t) in [("pos", &rep.positive), ("neg", &rep.negative)] {
            match t {
                Triviality::CertifiedTrivial(p) => writeln!(out, "  {sign}: trivial ({} steps)", p.len())?,
                Triviality::CertifiedNontrivial(wit) => {
                    writeln!(out, "  {sign}: nontrivial ({}: {} vs {})", wit.invariant, wit.left, wit.right)?
                }
                Triviality::Unknown => writeln!(out, "  {sign}: unknown")?,
            }
        }
    }
    Ok(match rep.overall {
        Admissibility::Admissible => EXIT_OK,
        Admissibility::NotAdmissible => EXIT_REFUTED,
        Admissibility::Unknown => EXIT_UNKNOWN,
    })
}

fn write_trace(out: &mut dyn Write, p: &Proof, from: &Word) -> Result<(), Failure> {
    let words = p.trace(from)?;
    for (s, w) in p.steps.iter().zip(&words[1..]) {
        writeln!(out, "  {s:?}  =>  {}", show(w))?;
    }
    Ok(())
}

fn report_verdict(w1: &Word, w2: &Word, v: &Verdict, json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    if json {
        return emit(out, &verdict_json(v, w1));
    }
    match v {
        Verdict::Proved(p) => {
            writeln!(out, "proved ({} steps)", p.len())?;
            write_trace(out, p, w1)?;
        }
        Verdict::Refuted(wit) => writeln!(out, "refuted: {} differs ({} vs {})", wit.invariant, wit.left, wit.right)?,
        Verdict::Unknown(e) => writeln!(
            out,
            "unknown: budget exhausted after {} states, depth {} ({} vs {})",
            e.states,
            e.depth,
            show(w1),
            show(w2)
        )?,
    }
    Ok(())
}

fn central(w: &Word, budget: &Budget, json: bool, out: &mut dyn Write) -> Res {
    let rep = is_central(w, RuleSet::from(budget.tier), &budget.budget());
    if json {
        let items: Vec<CommutationJson> = rep
            .commutations
            .iter()
            .map(|(g, v)| CommutationJson {
                generator: *g,
                result: verdict_json(v, &w.concat(&Word::new(vec![*g]))),
            })
            .collect();
        emit(
            out,
            &CentralJson {
                word: w.to_string(),
                verdict: rep.outcome().to_string(),
                commutations: items,
            },
        )?;
    } else {
        for (g, v) in &rep.commutations {
            match v {
                Verdict::Proved(p) => writeln!(out, "{g}  proved ({} steps)", p.len())?,
                Verdict::Refuted(wit) => writeln!(out, "{g}  refuted ({})", wit.invariant)?,
                Verdict::Unknown(e) => writeln!(out, "{g}  unknown ({} states)", e.states)?,
            }
        }
        writeln!(out, "{}", rep.outcome())?;
    }
    Ok(outcome_code(rep.outcome()))
}

#[derive(Serialize)]
struct ParseJson {
    word: String,
    letters: Vec<Letter>,
    length: usize,
    singular_letters: usize,
}

#[derive(Serialize)]
struct ResolveJson {
    word: String,
    length: usize,
}

#[derive(Serialize)]
struct StepJson {
    relation: String,
    position: usize,
    direction: &'static str,
    result: String,
}

fn proof_json(p: &Proof, from: &Word) -> Vec<StepJson> {
    let words = p.trace(from).expect("proofs replay");
    p.steps
        .iter()
        .zip(&words[1..])
        .map(|(s, w)| StepJson {
            relation: s.relation.to_string(),
            position: s.pos,
            direction: match s.dir {
                crate::relations::Direction::LtoR => "->",
                crate::relations::Direction::RtoL => "<-",
            },
            result: w.to_string(),
        })
        .collect()
}

#[derive(Serialize)]
struct VerdictJson {
    verdict: String,
    proof: Option<Vec<StepJson>>,
    witness: Option<WitnessJson>,
    states: Option<usize>,
}

#[derive(Serialize)]
struct WitnessJson {
    invariant: String,
    left: String,
    right: String,
}

fn verdict_json(v: &Verdict, from: &Word) -> VerdictJson {
    let mut j = VerdictJson {
        verdict: v.outcome().to_string(),
        proof: None,
        witness: None,
        states: None,
    };
    match v {
        Verdict::Proved(p) => j.proof = Some(proof_json(p, from)),
        Verdict::Refuted(w) => {
            j.witness = Some(WitnessJson {
                invariant: w.invariant.clone(),
                left: w.left.clone(),
                right: w.right.clone(),
            })
        }
        Verdict::Unknown(e) => j.states = Some(e.states),
    }
    j
}

#[derive(Serialize)]
struct SimplifyJson {
    input: String,
    word: String,
    length: usize,
    proof: Vec<StepJson>,
}

#[derive(Serialize)]
struct CommutationJson {
    generator: Letter,
    result: VerdictJson,
}

#[derive(Serialize)]
struct CentralJson {
    word: String,
    verdict: String,
    commutations: Vec<CommutationJson>,
}

#[derive(Serialize)]
struct TrivialityJson {
    verdict: &'static str,
    proof: Option<Vec<StepJson>>,
    witness: Option<String>,
}

#[derive(Serialize)]
struct ResolutionJson {
    sign: String,
    word: String,
    components: usize,
    triviality: TrivialityJson,
    bracket: Option<String>,
}

#[derive(Serialize)]
struct InvariantsJson {
    word: String,
    length: usize,
    components: usize,
    singular_points: usize,
    euler_characteristic: i64,
    resolutions: Vec<ResolutionJson>,
    linking_matrix: Option<Vec<Vec<i64>>>,
    bracket: Option<String>,
}

#[derive(Serialize)]
struct AdmissibleJson {
    verdict: String,
    positive: TrivialityJson,
    negative: TrivialityJson,
}

#[derive(Serialize)]
struct RelationJson {
    family: usize,
    index: u8,
    lhs: String,
    rhs: String,
}

fn relation_json(r: &RelationInstance) -> RelationJson {
    RelationJson {
        family: r.family.number(),
        index: r.index,
        lhs: r.lhs.to_string(),
        rhs: r.rhs.to_string(),
    }
}

#[derive(Serialize)]
struct EncodeJson {
    word: String,
    length: usize,
    crossings: usize,
    singular_points: usize,
    components: usize,
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
struct SelftestJson {
    passed: bool,
    checks: Vec<Check>,
}

/// Diagram fixtures shipped with the crate.
pub const UNKNOT_JSON: &str = include_str!("../fixtures/unknot.json");
pub const TREFOIL_JSON: &str = include_str!("../fixtures/trefoil.json");
pub const SPUN_TREFOIL_JSON: &str = include_str!("../fixtures/spun_trefoil.json");

fn selftest(contexts: usize, semantic: bool, json: bool, out: &mut dyn Write) -> Res {
    let mut checks = Vec::new();
    let mut check = |name: &'static str, result: Result<String, String>| {
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        checks.push(Check { name, passed, detail });
    };

    check("letter table", PictureTable::standard().validate().map(|_| "15 letters".into()));

    check("relation census", {
        let rels = enumerate_relations(Tier::Full);
        let counts: Vec<usize> = Family::ALL
            .iter()
            .map(|&f| rels.iter().filter(|r| r.family == f).count())
            .collect();
        let tiers = [Tier::Classical, Tier::Singular, Tier::Full].map(|t| enumerate_relations(t).len());
        let detail = format!("families {counts:?}, tiers {tiers:?}");
        if counts == [6, 12, 54, 9, 3, 6, 3, 3] && rels.len() == 96 {
            Ok(detail)
        } else {
            Err(detail)
        }
    });

    check("spun trefoil word", {
        let w = parse_word(fixtures::W_G).expect("fixture parses");
        match (decode(&w), euler_characteristic(&w)) {
            (Ok(g), Ok(2)) if g.singular_count() == 2 && g.component_count() == 1 => {
                Ok("1 curve, 2 singular points, chi 2".into())
            }
            (g, chi) => Err(format!(
                "decode {:?}, chi {chi:?}",
                g.map(|g| (g.component_count(), g.singular_count()))
            )),
        }
    });

    check("printed spun trefoil word is rejected", {
        let w = parse_word(fixtures::W_G_PRINTED).expect("fixture parses");
        match decode(&w) {
            Err(e) => Ok(e.to_string()),
            Ok(_) => Err("decodes".into()),
        }
    });

    check("diagram fixtures round trip", encoder_fixtures());

    let opts = SafetyOptions {
        contexts,
        semantic,
        ..SafetyOptions::default()
    };
    check("relation safety", {
        let rep = check_relations(PictureTable::standard(), enumerate_relations(Tier::Full), &opts);
        let detail = format!("{} relations, {} cases", rep.relations, rep.cases);
        match rep.violations.first() {
            None => Ok(detail),
            Some(v) => Err(format!(
                "{} violations; first: {} ({}) on {} / {}",
                rep.violations.len(),
                v.relation,
                v.check,
                v.lhs_word,
                v.rhs_word
            )),
        }
    });

    check("corrupted letter table is caught", {
        let table = corrupted_table();
        let quick = SafetyOptions {
            contexts: contexts.clamp(1, 20),
            semantic: false,
            ..SafetyOptions::default()
        };
        let rep = check_relations(&table, enumerate_relations(Tier::Full), &quick);
        match rep.violations.first() {
            Some(v) => Ok(format!("{} violations; first: {} ({})", rep.violations.len(), v.relation, v.check)),
            None => Err("no violation found".into()),
        }
    });

    let passed = checks.iter().all(|c| c.passed);
    if json {
        emit(out, &SelftestJson { passed, checks })?;
    } else {
        for c in &checks {
            writeln!(out, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
        }
    }
    Ok(if passed { EXIT_OK } else { EXIT_REFUTED })
}

/// The standard table with `b1` drawn like `d1`, running the wrong way.
pub fn corrupted_table() -> PictureTable {
    let end = |page, side| ArcEnd { page, side };
    PictureTable::standard().with_entry(
        Letter::new(Kind::B, 1),
        LocalPicture {
            ends: vec![end(Page::P2, Side::Left), end(Page::P0, Side::Right)],
            branches: None,
        },
    )
}

fn encoder_fixtures() -> Result<String, String> {
    let mut parts = Vec::new();
    for (name, text) in [
        ("unknot", UNKNOT_JSON),
        ("trefoil", TREFOIL_JSON),
        ("spun trefoil", SPUN_TREFOIL_JSON),
    ] {
        let d = PlanarMarkedDiagram::from_json(text).map_err(|e| format!("{name}: {e}"))?;
        let w = encode_diagram(&d).map_err(|e| format!("{name}: {e}"))?;
        let g = decode(&w).map_err(|e| format!("{name}: {e}"))?;
        let comps = d.component_count().map_err(|e| format!("{name}: {e}"))?;
        if g.component_count() != comps || g.singular_count() != d.singular_count() {
            return Err(format!("{name}: counts differ"));
        }
        if d.singular_count() == 0 {
            let pd = d.to_link_diagram().map_err(|e| e.to_string())?;
            let pw = to_link_diagram(&w).map_err(|e| e.to_string())?;
            if pd.crossing_count() != pw.crossing_count() {
                return Err(format!("{name}: crossing counts differ"));
            }
            match (normalized_bracket(&pd), normalized_bracket(&pw)) {
                (Ok(a), Ok(b)) if same_up_to_orientation(&a, &b) => {}
                _ => return Err(format!("{name}: brackets differ")),
            }
        } else {
            let wg = parse_word(fixtures::W_G).expect("fixture parses");
            if euler_characteristic(&w) != euler_characteristic(&wg) {
                return Err(format!("{name}: Euler characteristic differs from the word fixture"));
            }
        }
        parts.push(format!("{name} {} letters", w.len()));
    }
    Ok(parts.join(", "))
}
