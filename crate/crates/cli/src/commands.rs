//! Command definitions and their evaluation into artifacts.

use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use gcart_core::gram::{block_sum, gram_matrix, schur_orthonormality};
use gcart_core::invariants::{
    bhmulti_check, bunkaito_decompose, conjcheck_point, conjecture_report, conjequiv_check, graded_hill,
    hill_invariant, saigo2_check, tsaigo_check, GradedInvariant, IdentityCheck, InvariantKind,
};
use gcart_core::modp::det_laurent_multimodular;
use gcart_core::partitions::{blocks, enum_partitions, u_count};
use gcart_core::qcartan::{
    det_quantized, exponent_n, exponent_n_binomial, exponent_n_multipartition, folding_det_check, irreducible_at,
    shapovalov_det_formula, twisted_det_formula, DynkinDiagram, IrreducibilityMode, TwistedDiagram,
};
use gcart_core::snf::{snf_int, snf_laurent_field, try_diagonalize_zlaurent, DiagOutcome};
use gcart_core::{Error, InvariantMultiset, LaurentPoly, Partition, RingTag};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::render::{Artifact, Cell, Table};

/// Failure modes of a command, mapped to exit codes by the caller.
#[derive(Debug)]
pub enum CmdError {
    Usage(String),
    Compute(String),
}

impl From<Error> for CmdError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::Parse(_) | Error::RingMismatch(..) => CmdError::Usage(e.to_string()),
            _ => CmdError::Compute(e.to_string()),
        }
    }
}

type CmdResult = std::result::Result<Artifact, CmdError>;

fn usage<T>(msg: impl Into<String>) -> std::result::Result<T, CmdError> {
    Err(CmdError::Usage(msg.into()))
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Gram matrix of the Heisenberg pairing on a weight space
    Gram(GramArgs),
    /// Determinant formula, optionally checked against the Gram matrix
    Det(DetArgs),
    /// Run one of the identity verifiers
    Verify {
        #[command(subcommand)]
        identity: Identity,
    },
    /// Irreducibility of the specialization at a primitive root of unity
    Irred(IrredArgs),
    /// Conjectural determinant for a twisted affine diagram
    Twisted(TwistedArgs),
    /// Invariant factors of a matrix read from JSON
    Snf(SnfArgs),
    /// Evaluate Hill/KOR-type invariants
    Invariants(InvariantArgs),
    /// Layered evidence for the graded Cartan conjecture
    Report(PrimePower),
    /// Table of the conjectured invariant multiset
    Table(PrimePower),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gram(_) => "gram",
            Command::Det(_) => "det",
            Command::Verify { .. } => "verify",
            Command::Irred(_) => "irred",
            Command::Twisted(_) => "twisted",
            Command::Snf(_) => "snf",
            Command::Invariants(_) => "invariants",
            Command::Report(_) => "report",
            Command::Table(_) => "table",
        }
    }
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct DiagramChoice {
    /// Diagram such as A:4, D:5, E:7
    #[arg(long, conflicts_with = "ell")]
    pub diagram: Option<String>,
    /// Shorthand for A:{ell-1}
    #[arg(long)]
    pub ell: Option<u32>,
}

impl DiagramChoice {
    fn resolve(&self) -> std::result::Result<DynkinDiagram, CmdError> {
        match (&self.diagram, self.ell) {
            (Some(s), None) => Ok(s.parse()?),
            (None, Some(ell)) => Ok(DynkinDiagram::type_a_for_ell(ell)?),
            _ => usage("give exactly one of --diagram or --ell"),
        }
    }
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GramArgs {
    #[command(flatten)]
    pub which: DiagramChoice,
    #[arg(long)]
    pub d: Option<u32>,
    /// Emit the block sum over Bl_ell(n) instead of a single weight space
    #[arg(long, requires = "ell", conflicts_with_all = ["d", "diagram"])]
    pub blocks: Option<u32>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct DetArgs {
    #[command(flatten)]
    pub which: DiagramChoice,
    #[arg(long)]
    pub d: u32,
    /// Also compute det of the Gram matrix and require exact equality
    #[arg(long)]
    pub check: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct IrredArgs {
    #[arg(long)]
    pub diagram: String,
    #[arg(long)]
    pub ell: u64,
    #[arg(long, value_enum, default_value_t = ModeArg::Both)]
    pub mode: ModeArg,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeArg {
    ClosedForm,
    Exact,
    /// Run both modes and require agreement
    Both,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct TwistedArgs {
    /// Twisted diagram such as tA2:3, tA2e:2, tD2:4, tE6, tD4
    #[arg(long)]
    pub diagram: String,
    #[arg(long)]
    pub d: u32,
    /// Also run the folding determinant check for t = 1..=fold
    #[arg(long)]
    pub fold: Option<u32>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SnfArgs {
    /// JSON array of rows; entries are integers, strings like "v^2 + 1", or {"terms": {...}}
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = RingArg::Qlaurent)]
    pub ring: RingArg,
    /// Step budget for the greedy reduction over Z[v, 1/v]
    #[arg(long, default_value_t = 200_000)]
    pub budget: usize,
    /// Content hash of the input file; filled in before caching
    #[arg(skip)]
    pub input_hash: String,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RingArg {
    Zint,
    Qlaurent,
    Zlaurent,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct InvariantArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Prime p (hill, graded-hill, graded-kor) or ell (kor, asy)
    #[arg(long)]
    pub base: u64,
    #[arg(long, default_value_t = 1)]
    pub r: u32,
    /// Comma-separated parts, e.g. 3,1,1
    #[arg(long, conflicts_with = "n")]
    pub partition: Option<String>,
    /// Evaluate on every partition of n
    #[arg(long)]
    pub n: Option<u32>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KindArg {
    Hill,
    GradedHill,
    Kor,
    GradedKor,
    Asy,
}

impl From<KindArg> for InvariantKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Hill => InvariantKind::Hill,
            KindArg::GradedHill => InvariantKind::GradedHill,
            KindArg::Kor => InvariantKind::Kor,
            KindArg::GradedKor => InvariantKind::GradedKor,
            KindArg::Asy => InvariantKind::Asy,
        }
    }
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct PrimePower {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub r: u32,
    #[arg(long)]
    pub d: u32,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// Product expansion identity for d = 0..=dmax
    Conjcheck {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        dmax: u32,
    },
    /// Valuation multiset identity
    Tsaigo {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        u: u64,
    },
    /// Block decomposition of the class-regular multiset
    Saigo2 {
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        n: u32,
    },
    /// Block decomposition of the KOR multiset
    Bhmulti {
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        n: u32,
    },
    /// Hill and KOR multisets agree blockwise
    Conjequiv {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u32,
    },
    /// Decomposition of S_d into inflated Psi sets
    Bunkaito {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        d: u32,
    },
    /// Schur functions are orthonormal for |lambda| <= nmax
    SchurOrth {
        #[arg(long)]
        nmax: u32,
    },
    /// The two exponent formulas agree for colors < pmax, d <= dmax
    NFormula {
        #[arg(long, default_value_t = 7)]
        pmax: u32,
        #[arg(long, default_value_t = 10)]
        dmax: u32,
    },
}

/// Upper bound on the matrix dimension a command would build.
pub fn planned_dim(cmd: &Command) -> std::result::Result<Option<u128>, CmdError> {
    Ok(match cmd {
        Command::Gram(g) => {
            if let Some(n) = g.blocks {
                let ell = g.which.ell.unwrap_or(0);
                if ell < 2 {
                    return usage("--blocks needs --ell >= 2");
                }
                Some(blocks(n, ell).iter().map(|b| u_count(ell - 1, b.weight)).sum())
            } else {
                let dg = g.which.resolve()?;
                let d = g.d.ok_or_else(|| CmdError::Usage("--d is required".into()))?;
                Some(u_count(dg.rank() as u32, d))
            }
        }
        Command::Det(a) if a.check => Some(u_count(a.which.resolve()?.rank() as u32, a.d)),
        Command::Report(a) | Command::Table(a) => {
            let ell = a.p.checked_pow(a.r).filter(|&l| (2..=u32::MAX as u64).contains(&l));
            let ell = ell.ok_or_else(|| CmdError::Usage("p^r out of range".into()))?;
            Some(u_count(ell as u32 - 1, a.d))
        }
        _ => None,
    })
}

pub fn run(cmd: &Command) -> CmdResult {
    match cmd {
        Command::Gram(a) => cmd_gram(a),
        Command::Det(a) => cmd_det(a),
        Command::Verify { identity } => cmd_verify(identity),
        Command::Irred(a) => cmd_irred(a),
        Command::Twisted(a) => cmd_twisted(a),
        Command::Snf(a) => cmd_snf(a),
        Command::Invariants(a) => cmd_invariants(a),
        Command::Report(a) => cmd_report(a),
        Command::Table(a) => cmd_table(a),
    }
}

fn to_json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn matrix_table(m: &[Vec<LaurentPoly>]) -> Table {
    Table::matrix(m.iter().map(|r| r.iter().cloned().map(Cell::from).collect()).collect())
}

fn cmd_gram(a: &GramArgs) -> CmdResult {
    if let Some(n) = a.blocks {
        let ell = a.which.ell.expect("clap enforces --ell");
        let bs = block_sum(n, ell)?;
        let table = matrix_table(&bs.to_matrix());
        return Ok(Artifact { json: to_json(&bs), table, ok: true });
    }
    let dg = a.which.resolve()?;
    let d = a.d.ok_or_else(|| CmdError::Usage("--d is required".into()))?;
    let gm = gram_matrix(dg, d)?;
    Ok(Artifact { json: to_json(&gm), table: matrix_table(&gm.entries), ok: true })
}

fn cmd_det(a: &DetArgs) -> CmdResult {
    let dg = a.which.resolve()?;
    let colors = dg.rank() as u32;
    let formula = shapovalov_det_formula(dg, a.d)?;
    let mut table = Table::new(["s", "det [X]_s", "N"]);
    let mut factors = Vec::new();
    for s in 1..=a.d {
        let n = exponent_n(colors, a.d, s)?;
        let ds = det_quantized(dg, s)?;
        table.push(vec![s.to_string().into(), ds.clone().into(), n.to_string().into()]);
        factors.push(json!({"s": s, "det": ds, "exponent": n.to_string()}));
    }
    table.push(vec!["product".into(), formula.clone().into(), "".into()]);
    let mut doc = json!({"diagram": dg.to_string(), "d": a.d, "formula": formula, "factors": factors});
    let mut ok = true;
    if a.check {
        let gm = gram_matrix(dg, a.d)?;
        let det = if gm.dim() == 0 { LaurentPoly::one() } else { det_laurent_multimodular(&gm.entries)? };
        ok = det == formula;
        table.push(vec!["gram".into(), det.clone().into(), if ok { "equal" } else { "DIFFERS" }.into()]);
        doc["check"] = json!({"gram_det": det, "equal": ok});
    }
    Ok(Artifact { json: doc, table, ok })
}

fn identity_artifact(name: &str, params: Value, check: &IdentityCheck) -> Artifact {
    let mut table = Table::new(["identity", "holds", "left", "right", "first mismatch"]);
    let mismatch = check.first_mismatch.as_ref().map(|(e, l, r)| format!("{e}: {l} vs {r}")).unwrap_or_default();
    table.push(vec![
        name.into(),
        check.holds.to_string().into(),
        check.left_size.to_string().into(),
        check.right_size.to_string().into(),
        mismatch.into(),
    ]);
    Artifact { json: json!({"identity": name, "params": params, "result": check}), table, ok: check.holds }
}

fn simple_artifact(name: &str, params: Value, ok: bool, detail: Value) -> Artifact {
    let mut table = Table::new(["identity", "holds"]);
    table.push(vec![name.into(), ok.to_string().into()]);
    Artifact { json: json!({"identity": name, "params": params, "holds": ok, "detail": detail}), table, ok }
}

fn cmd_verify(id: &Identity) -> CmdResult {
    let params = to_json(id);
    Ok(match *id {
        Identity::Conjcheck { p, r, dmax } => {
            let mut points = Vec::new();
            let mut table = Table::new(["d", "factored", "expanded"]);
            for d in 0..=dmax {
                let pt = conjcheck_point(p, r, d)?;
                let exp = pt.expanded_equal.map_or("skipped".to_string(), |b| b.to_string());
                table.push(vec![d.to_string().into(), pt.factored_equal.to_string().into(), exp.into()]);
                points.push(pt);
            }
            let ok = points.iter().all(|pt| pt.ok());
            Artifact { json: json!({"identity": "conjcheck", "params": params, "holds": ok, "points": points}), table, ok }
        }
        Identity::Tsaigo { p, r, d, u } => identity_artifact("tsaigo", params, &tsaigo_check(p, r, d, u)?),
        Identity::Saigo2 { ell, n } => identity_artifact("saigo2", params, &saigo2_check(ell, n)?),
        Identity::Bhmulti { ell, n } => identity_artifact("bhmulti", params, &bhmulti_check(ell, n)?),
        Identity::Conjequiv { p, r, n } => identity_artifact("conjequiv", params, &conjequiv_check(p, r, n)?),
        Identity::Bunkaito { p, r, d } => {
            let rep = bunkaito_decompose(p, r, d)?;
            simple_artifact("bunkaito", params, rep.verified(), to_json(&rep))
        }
        Identity::SchurOrth { nmax } => simple_artifact("schur-orth", params, schur_orthonormality(nmax)?, Value::Null),
        Identity::NFormula { pmax, dmax } => {
            let mut bad = Vec::new();
            for p in 2..=pmax {
                for d in 0..=dmax {
                    for s in 1..=d.max(1) {
                        let (a, b) = (exponent_n_binomial(p - 1, d, s)?, exponent_n_multipartition(p - 1, d, s)?);
                        if a != b {
                            bad.push(json!({"colors": p - 1, "d": d, "s": s, "binomial": a.to_string(), "multipartition": b.to_string()}));
                        }
                    }
                }
            }
            simple_artifact("n-formula", params, bad.is_empty(), Value::Array(bad))
        }
    })
}

fn cmd_irred(a: &IrredArgs) -> CmdResult {
    let dg: DynkinDiagram = a.diagram.parse()?;
    let closed = matches!(a.mode, ModeArg::ClosedForm | ModeArg::Both)
        .then(|| irreducible_at(dg, a.ell, IrreducibilityMode::ClosedForm))
        .transpose()?;
    let exact = matches!(a.mode, ModeArg::Exact | ModeArg::Both)
        .then(|| irreducible_at(dg, a.ell, IrreducibilityMode::Exact))
        .transpose()?;
    let ok = !(closed.is_some() && exact.is_some() && closed != exact);
    let verdict = exact.or(closed).expect("at least one mode runs");
    let word = if verdict { "irreducible" } else { "reducible" };
    let mut table = Table::new(["diagram", "ell", "verdict", "closed_form", "exact"]);
    let show = |x: Option<bool>| x.map_or(String::new(), |b| b.to_string());
    table.push(vec![dg.to_string().into(), a.ell.to_string().into(), word.into(), show(closed).into(), show(exact).into()]);
    let doc = json!({"diagram": dg.to_string(), "ell": a.ell, "irreducible": verdict, "closed_form": closed, "exact": exact, "modes_agree": ok});
    Ok(Artifact { json: doc, table, ok })
}

pub const CONJECTURAL_BANNER: &str = "CONJECTURAL: twisted determinant formula, not a theorem";

fn cmd_twisted(a: &TwistedArgs) -> CmdResult {
    let td: TwistedDiagram = a.diagram.parse()?;
    let value = twisted_det_formula(td, a.d)?;
    let mut table = Table::new(["diagram", "epsilon", "d", "value"]).note(CONJECTURAL_BANNER);
    table.push(vec![td.name().into(), td.epsilon().to_string().into(), a.d.to_string().into(), value.clone().into()]);
    let mut folds = Vec::new();
    let mut ok = true;
    if let Some(tmax) = a.fold {
        for t in 1..=tmax {
            let fc = folding_det_check(td, t)?;
            ok &= fc.ok();
            table.push(vec![format!("fold t={t}").into(), fc.f.to_string().into(), "".into(), fc.det.clone().into()]);
            folds.push(fc);
        }
    }
    let doc = json!({
        "status": "CONJECTURAL",
        "diagram": td.name(),
        "syntax": td.to_string(),
        "epsilon": td.epsilon(),
        "d": a.d,
        "value": value,
        "folding": folds,
    });
    Ok(Artifact { json: doc, table, ok })
}

pub fn parse_matrix(text: &str) -> std::result::Result<Vec<Vec<LaurentPoly>>, CmdError> {
    let v: Value = serde_json::from_str(text).map_err(|e| CmdError::Usage(format!("input is not JSON: {e}")))?;
    let rows = v.as_array().ok_or_else(|| CmdError::Usage("input must be a JSON array of rows".into()))?;
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row.as_array().ok_or_else(|| CmdError::Usage("each row must be an array".into()))?;
        let mut r = Vec::with_capacity(row.len());
        for x in row {
            let p = match x {
                Value::Number(n) => n.to_string().parse::<LaurentPoly>()?,
                Value::String(s) => s.parse::<LaurentPoly>()?,
                other => serde_json::from_value(other.clone()).map_err(|e| CmdError::Usage(format!("bad entry: {e}")))?,
            };
            r.push(p);
        }
        out.push(r);
    }
    if out.iter().any(|r| r.len() != out.len()) {
        return usage("matrix must be square");
    }
    Ok(out)
}

fn int_value(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

/// Elements in divisibility-chain order: zeros last, then by degree span and size.
fn chain_order(ms: &InvariantMultiset) -> Vec<LaurentPoly> {
    let mut v = ms.elements.clone();
    v.sort_by_cached_key(|x| {
        let span = x.min_exp().map(|lo| x.max_exp().unwrap() - lo);
        (x.is_zero(), span, x.eval_one().magnitude().clone())
    });
    v
}

fn multiset_json(ms: &InvariantMultiset) -> Value {
    let chain = chain_order(ms);
    if ms.ring == RingTag::ZInt {
        Value::Array(chain.iter().map(|x| int_value(&x.eval_one())).collect())
    } else {
        to_json(&chain)
    }
}

fn cmd_snf(a: &SnfArgs) -> CmdResult {
    let text = std::fs::read_to_string(&a.input).map_err(|e| CmdError::Usage(format!("{}: {e}", a.input.display())))?;
    let m = parse_matrix(&text)?;
    let mut table = Table::new(["invariant"]);
    let (status, ms) = match a.ring {
        RingArg::Zint => {
            let ints: Vec<Vec<BigInt>> = m
                .iter()
                .map(|r| r.iter().map(|x| if x.is_constant() { Ok(x.eval_one()) } else { usage("zint input must be integers") }).collect())
                .collect::<std::result::Result<_, _>>()?;
            ("SUCCESS", Some(snf_int(&ints)?))
        }
        RingArg::Qlaurent => ("SUCCESS", Some(snf_laurent_field(&m)?)),
        RingArg::Zlaurent => match try_diagonalize_zlaurent(&m, a.budget)? {
            DiagOutcome::Success(d) => ("SUCCESS", Some(InvariantMultiset::new(RingTag::ZLaurent, d)?)),
            DiagOutcome::Inconclusive { .. } => ("INCONCLUSIVE", None),
        },
    };
    let mut doc = json!({"ring": format!("{:?}", a.ring).to_lowercase(), "dim": m.len(), "status": status});
    if let Some(ms) = &ms {
        for x in chain_order(ms) {
            table.push(vec![x.into()]);
        }
        doc["invariants"] = multiset_json(ms);
    } else {
        table = table.note("INCONCLUSIVE: greedy reduction stopped; no verdict");
    }
    Ok(Artifact { json: doc, table, ok: true })
}

fn parse_partition(s: &str) -> std::result::Result<Partition, CmdError> {
    let parts: Vec<u32> = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u32>().map_err(|_| CmdError::Usage(format!("bad part '{t}'"))))
        .collect::<std::result::Result<_, _>>()?;
    if parts.contains(&0) {
        return usage("parts must be positive");
    }
    Ok(Partition::from_unsorted(parts))
}

fn cmd_invariants(a: &InvariantArgs) -> CmdResult {
    let lams = match (&a.partition, a.n) {
        (Some(s), None) => vec![parse_partition(s)?],
        (None, Some(n)) => enum_partitions(n),
        _ => return usage("give exactly one of --partition or --n"),
    };
    let kind: InvariantKind = a.kind.into();
    let mut table = Table::new(["partition", "value"]);
    let mut values = Vec::new();
    for lam in &lams {
        let g = GradedInvariant::evaluate(kind, a.base, a.r, lam)?;
        table.push(vec![lam.to_string().into(), g.value.clone().into()]);
        values.push(g);
    }
    Ok(Artifact { json: to_json(&values), table, ok: true })
}

fn cmd_report(a: &PrimePower) -> CmdResult {
    let rep = conjecture_report(a.p, a.r, a.d)?;
    let mut table = Table::new(["layer", "status", "theorem_backed", "detail"]);
    for l in &rep.layers {
        table.push(vec![
            l.name.clone().into(),
            to_json(&l.status).as_str().unwrap_or_default().into(),
            l.theorem_backed.to_string().into(),
            l.detail.clone().into(),
        ]);
    }
    let ok = rep.sound();
    Ok(Artifact { json: to_json(&rep), table, ok })
}

fn cmd_table(a: &PrimePower) -> CmdResult {
    let ell = a.p.checked_pow(a.r).ok_or_else(|| CmdError::Usage("p^r overflows".into()))? as u32;
    let mut table = Table::new(["s", "partition", "multiplicity", "I", "I^v"]);
    let mut rows = Vec::new();
    for s in 1..=a.d {
        let mult = u_count(ell - 2, a.d - s);
        if mult == 0 {
            continue;
        }
        for lam in enum_partitions(s) {
            let i = hill_invariant(a.p, a.r, &lam)?;
            let iv = graded_hill(a.p, a.r, &lam)?;
            table.push(vec![
                s.to_string().into(),
                lam.to_string().into(),
                mult.to_string().into(),
                i.to_string().into(),
                iv.clone().into(),
            ]);
            rows.push(json!({"s": s, "partition": lam, "multiplicity": mult.to_string(), "hill": int_value(&i), "graded_hill": iv}));
        }
    }
    let doc = json!({"p": a.p, "r": a.r, "ell": ell, "d": a.d, "dim": u_count(ell - 1, a.d).to_string(), "rows": rows});
    Ok(Artifact { json: doc, table, ok: true })
}
