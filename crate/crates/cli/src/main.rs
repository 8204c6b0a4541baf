use std::collections::BTreeMap;
use std::io::Write as _;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};
use serde_json::{json, Value};

use latticelab::casebook::{self, DiagonalAction, PolarizationRoot, TableId};
use latticelab::form::DEFAULT_CAP;
use latticelab::lattice::{self, LatticeSpec};
use latticelab::nikulin::{self, LatticeInvariant};
use latticelab::rank2::{self, Parity, Rank2Form};
use latticelab::shortvec::{self, Caps};
use latticelab::{glue, iso, Error, FiniteQuadraticForm, GenusSymbol, GramLattice, Result, Sign};

#[derive(Parser)]
#[command(name = "latticelab", version, about = "Exact computations with even lattices and discriminant forms")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for table reports. Output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    #[command(subcommand)]
    Lattice(LatticeCmd),
    #[command(subcommand)]
    Rank2(Rank2Cmd),
    #[command(subcommand)]
    Dform(DformCmd),
    #[command(subcommand)]
    Glue(GlueCmd),
    #[command(subcommand)]
    Nikulin(NikulinCmd),
    /// Overlattices of S + R in which S stays primitive.
    Saturate {
        /// Discriminant form of S.
        #[arg(long = "s")]
        s: String,
        /// Discriminant form of R.
        #[arg(long = "r", conflicts_with = "root")]
        r: Option<String>,
        /// Registry lattice whose discriminant form is used for R.
        #[arg(long)]
        root: Option<String>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
    #[command(subcommand)]
    Cubic(CubicCmd),
    #[command(subcommand)]
    K3(K3Cmd),
    /// Uniqueness criterion for the passing saturations of a cubic row.
    Uniqueness {
        #[arg(long)]
        row: u32,
    },
    /// Largest non-symplectic order for a maximal-rank cubic row.
    Nonsymplectic {
        #[arg(long)]
        row: u32,
    },
    /// Dimension of the family of cubics invariant under a diagonal action.
    FamilyDim {
        #[command(flatten)]
        action: ActionArgs,
        /// A bundled case id instead of an explicit action.
        #[arg(long, conflicts_with_all = ["order", "weights", "w0"])]
        case: Option<String>,
    },
    /// Symplecticity test for a diagonal action on a cubic.
    SymplecticCheck {
        #[command(flatten)]
        action: ActionArgs,
        /// Monomials of the cubic as six-digit exponent strings, e.g. 210000,021000.
        #[arg(long, value_delimiter = ',')]
        monomials: Vec<String>,
        /// Check every bundled case against its invariant monomials.
        #[arg(long, conflicts_with_all = ["order", "weights", "w0", "monomials"])]
        all: bool,
    },
}

#[derive(Args)]
struct LatticeArgs {
    /// Gram matrix as a row-major bracketed list, e.g. "[[2,-1],[-1,2]]".
    #[arg(long, group = "input")]
    gram: Option<String>,
    /// Registry name such as E6, A2+E6, II(1,1), Lambda0.
    #[arg(long, group = "input")]
    name: Option<String>,
    /// JSON file holding {"gram": ...} or {"name": ..., "scale": ...}.
    #[arg(long, group = "input")]
    file: Option<std::path::PathBuf>,
    /// Rescale the form by this factor.
    #[arg(long, default_value_t = 1)]
    scale: i64,
}

#[derive(Args)]
struct ActionArgs {
    #[arg(long)]
    order: Option<u32>,
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<u32>>,
    #[arg(long)]
    w0: Option<u32>,
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Rank, signature, determinant and parity.
    Info(LatticeArgs),
    /// Vectors of a given norm, one of each ± pair.
    Shortvec {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long, allow_hyphen_values = true)]
        norm: i64,
        #[arg(long, default_value_t = shortvec::DEFAULT_RANK_CAP)]
        rank_cap: usize,
        #[arg(long, default_value_t = shortvec::DEFAULT_NORM_CAP)]
        norm_cap: i64,
    },
}

#[derive(Subcommand)]
enum Rank2Cmd {
    /// Reduced definite binary forms of a given determinant.
    Enum {
        #[arg(long)]
        det: i64,
        /// Negative definite forms.
        #[arg(long)]
        neg: bool,
        /// Only even forms.
        #[arg(long)]
        even: bool,
    },
    /// Reduce a form written as "(a^b c)" or "-(a^b c)".
    Reduce {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// Orders of the isometries of a form.
    Autorders {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
}

#[derive(Subcommand)]
enum DformCmd {
    /// Discriminant form of an even lattice.
    Of(LatticeArgs),
    /// Canonical symbol and invariants of a form given by its symbol.
    Symbol { symbol: String },
    /// Isomorphism test, by canonical symbols and by explicit search.
    Iso {
        a: String,
        b: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
}

#[derive(Subcommand)]
enum GlueCmd {
    /// Isotropic subgroups and the forms on H^perp/H.
    Isotropic {
        #[arg(long)]
        form: String,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: u64,
    },
}

#[derive(Subcommand)]
enum NikulinCmd {
    /// Existence of an even lattice with the given signature and form.
    Exists {
        /// Signature as n_plus,n_minus.
        #[arg(long)]
        sig: String,
        #[arg(long)]
        form: String,
    },
    /// Primitive embedding into the even unimodular lattice of signature l1,l2.
    Embed {
        #[arg(long)]
        sig: String,
        #[arg(long)]
        form: String,
        #[arg(long, default_value = "26,2")]
        into: String,
    },
}

#[derive(Subcommand)]
enum CubicCmd {
    /// Run the table of symplectic groups against the cubic fourfold lattice.
    Check {
        #[arg(long, conflicts_with = "all")]
        row: Option<u32>,
        #[arg(long)]
        all: bool,
    },
}

#[derive(Subcommand)]
enum K3Cmd {
    /// Run the maximal K3 groups against a polarization of degree 0, 2, 4 or 6.
    Check {
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        row: Option<u32>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    check_usage(&cli);
    match run(&cli) {
        Ok(out) => {
            let text = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("json") + "\n"
            } else {
                out.text
            };
            let _ = std::io::stdout().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            if cli.json {
                println!("{}", json!({ "error": e.name(), "message": e.to_string() }));
            }
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(1)
        }
    }
}

fn check_usage(cli: &Cli) {
    let weights = match &cli.cmd {
        Cmd::FamilyDim { action, .. } | Cmd::SymplecticCheck { action, .. } => action.weights.as_ref(),
        _ => None,
    };
    if weights.is_some_and(|w| w.len() != 6) {
        Cli::command()
            .error(ErrorKind::WrongNumberOfValues, "--weights takes exactly six values")
            .exit();
    }
}

struct Output {
    text: String,
    json: Value,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn parse_pair(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| invalid(format!("expected two numbers like 26,2, got {s:?}")))?;
    let n = |t: &str| t.trim().parse::<usize>().map_err(|_| invalid(format!("bad number {t:?}")));
    Ok((n(a)?, n(b)?))
}

fn parse_form(s: &str) -> Result<FiniteQuadraticForm> {
    Ok(GenusSymbol::parse(s)?.to_form())
}

fn build_lattice(args: &LatticeArgs) -> Result<GramLattice> {
    let base = if let Some(g) = &args.gram {
        let gram: Vec<Vec<i64>> =
            serde_json::from_str(g).map_err(|e| invalid(format!("bad Gram matrix: {e}")))?;
        GramLattice::new(gram)?
    } else if let Some(n) = &args.name {
        lattice::named(n)?
    } else if let Some(path) = &args.file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        let spec: LatticeSpec =
            serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        spec.build()?
    } else {
        return Err(invalid("give one of --gram, --name or --file"));
    };
    if args.scale == 1 {
        Ok(base)
    } else {
        base.rescale(args.scale)
    }
}

fn action(args: &ActionArgs) -> Result<DiagonalAction> {
    match (args.order, &args.weights, args.w0) {
        (Some(n), Some(w), Some(w0)) => {
            let weights: [u32; 6] = w
                .as_slice()
                .try_into()
                .map_err(|_| invalid("exactly six weights are needed"))?;
            DiagonalAction::new(n, weights, w0)
        }
        _ => Err(invalid("give --order, --weights and --w0")),
    }
}

fn parse_monomial(s: &str) -> Result<[u8; 6]> {
    let digits: Vec<u8> = s
        .trim()
        .chars()
        .map(|c| c.to_digit(10).map(|d| d as u8))
        .collect::<Option<_>>()
        .ok_or_else(|| invalid(format!("bad monomial {s:?}")))?;
    let m: [u8; 6] = digits
        .try_into()
        .map_err(|_| invalid(format!("monomial {s:?} needs six exponents")))?;
    if m.iter().map(|&e| e as u32).sum::<u32>() != 3 {
        return Err(invalid(format!("monomial {s:?} is not cubic")));
    }
    Ok(m)
}

fn monomial_string(m: &[u8; 6]) -> String {
    m.iter().map(|e| e.to_string()).collect()
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.cmd {
        Cmd::Lattice(c) => lattice_cmd(c),
        Cmd::Rank2(c) => rank2_cmd(c),
        Cmd::Dform(c) => dform_cmd(c),
        Cmd::Glue(GlueCmd::Isotropic { form, cap }) => isotropic(form, *cap),
        Cmd::Nikulin(c) => nikulin_cmd(c),
        Cmd::Saturate { s, r, root, cap } => saturate(s, r.as_deref(), root.as_deref(), *cap),
        Cmd::Cubic(CubicCmd::Check { row, all }) => {
            if row.is_none() && !all {
                return Err(invalid("give --row N or --all"));
            }
            table_check(TableId::Hm15, PolarizationRoot::E6, *row, cli.threads)
        }
        Cmd::K3(K3Cmd::Check { degree, row }) => {
            let root = PolarizationRoot::for_k3_degree(*degree)?;
            table_check(TableId::K3Max11, root, *row, cli.threads)
        }
        Cmd::Uniqueness { row } => uniqueness(*row),
        Cmd::Nonsymplectic { row } => nonsymplectic(*row),
        Cmd::FamilyDim { action: a, case } => family_dim(a, case.as_deref()),
        Cmd::SymplecticCheck { action: a, monomials, all } => symplectic(a, monomials, *all),
    }
}

fn lattice_cmd(c: &LatticeCmd) -> Result<Output> {
    match c {
        LatticeCmd::Info(args) => {
            let l = build_lattice(args)?;
            let (p, m) = l.signature();
            let j = json!({
                "rank": l.rank(),
                "signature": [p, m],
                "det": l.det().to_string(),
                "even": l.is_even(),
                "definite": l.is_definite(),
                "gram": l.gram(),
            });
            let text = format!(
                "rank {}\nsignature ({p},{m})\ndet {}\neven {}\ndefinite {}\n",
                l.rank(),
                l.det(),
                l.is_even(),
                l.is_definite()
            );
            Ok(Output::new(text, j))
        }
        LatticeCmd::Shortvec { lattice: args, norm, rank_cap, norm_cap } => {
            let l = build_lattice(args)?;
            let caps = Caps { rank: *rank_cap, norm: *norm_cap };
            let vs = shortvec::short_vectors_capped(&l, *norm, caps)?;
            let mut text = format!("{} vectors of norm {norm} (up to sign)\n", vs.len());
            for v in &vs {
                text.push_str(&format!("{v:?}\n"));
            }
            Ok(Output::new(text, json!({ "norm": norm, "count": vs.len(), "vectors": vs })))
        }
    }
}

fn rank2_cmd(c: &Rank2Cmd) -> Result<Output> {
    match c {
        Rank2Cmd::Enum { det, neg, even } => {
            if *det <= 0 {
                return Err(invalid("determinant must be positive"));
            }
            let sign = if *neg { Sign::Minus } else { Sign::Plus };
            let parity = if *even { Parity::Even } else { Parity::Any };
            let forms = rank2::enumerate(*det, parity, sign);
            let text: String = forms.iter().map(|f| format!("{f}\n")).collect();
            Ok(Output::new(text, json!({ "det": det, "forms": forms })))
        }
        Rank2Cmd::Reduce { form } => {
            let f = Rank2Form::parse(form)?;
            let r = f.reduce();
            Ok(Output::new(format!("{r}\n"), json!({ "input": f, "reduced": r })))
        }
        Rank2Cmd::Autorders { form } => {
            let f = Rank2Form::parse(form)?;
            let orders = f.automorphism_orders();
            let list: Vec<String> = orders.iter().map(|o| o.to_string()).collect();
            Ok(Output::new(
                format!("{}\n", list.join(" ")),
                json!({ "form": f, "isometries": f.isometries().len(), "orders": orders }),
            ))
        }
    }
}

fn form_summary(q: &FiniteQuadraticForm) -> Value {
    let lengths: BTreeMap<String, usize> = q
        .primary_lengths()
        .into_iter()
        .map(|(p, l)| (p.to_string(), l))
        .collect();
    json!({
        "symbol": q.to_symbol().to_string(),
        "order": q.order(),
        "signature_mod8": q.signature_mod8(),
        "lengths": lengths,
        "form": q.to_json(),
    })
}

fn form_text(q: &FiniteQuadraticForm) -> String {
    let lengths: Vec<String> = q
        .primary_lengths()
        .into_iter()
        .map(|(p, l)| format!("l_{p} = {l}"))
        .collect();
    format!(
        "symbol {}\norder {}\nsignature {} mod 8\n{}\n",
        q.to_symbol(),
        q.order(),
        q.signature_mod8(),
        lengths.join(", ")
    )
}

fn dform_cmd(c: &DformCmd) -> Result<Output> {
    match c {
        DformCmd::Of(args) => {
            let q = latticelab::discriminant_form(&build_lattice(args)?)?;
            Ok(Output::new(form_text(&q), form_summary(&q)))
        }
        DformCmd::Symbol { symbol } => {
            let q = parse_form(symbol)?;
            Ok(Output::new(form_text(&q), form_summary(&q)))
        }
        DformCmd::Iso { a, b, cap } => {
            let (qa, qb) = (parse_form(a)?, parse_form(b)?);
            let by_symbol = qa.is_isomorphic(&qb);
            let by_search = iso::is_isomorphic_bruteforce(&qa, &qb, *cap)?;
            if by_symbol != by_search {
                return Err(invalid(format!(
                    "symbol comparison says {by_symbol} but the search says {by_search}"
                )));
            }
            Ok(Output::new(
                format!("{by_symbol}\n"),
                json!({ "isomorphic": by_symbol, "symbols": [qa.to_symbol().to_string(), qb.to_symbol().to_string()] }),
            ))
        }
    }
}

fn isotropic(form: &str, cap: u64) -> Result<Output> {
    let q = parse_form(form)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for h in glue::isotropic_subgroups(&q, cap)? {
        let quotient = glue::complement_quotient(&q, &h.gens)?.to_symbol().to_string();
        text.push_str(&format!("order {}  gens {:?}  quotient {quotient}\n", h.order, h.gens));
        rows.push(json!({ "order": h.order, "gens": h.gens, "quotient": quotient }));
    }
    Ok(Output::new(text, json!({ "form": q.to_symbol().to_string(), "subgroups": rows })))
}

fn nikulin_cmd(c: &NikulinCmd) -> Result<Output> {
    match c {
        NikulinCmd::Exists { sig, form } => {
            let (p, m) = parse_pair(sig)?;
            let e = nikulin::even_lattice_exists(&LatticeInvariant::new(p, m, parse_form(form)?));
            let text = match e.failed_condition {
                None => "exists: true\n".to_string(),
                Some(c) => format!("exists: false (condition {c}: {})\n", e.reason),
            };
            Ok(Output::new(text, serde_json::to_value(&e).expect("json")))
        }
        NikulinCmd::Embed { sig, form, into } => {
            let (p, m) = parse_pair(sig)?;
            let (l1, l2) = parse_pair(into)?;
            let inv = LatticeInvariant::new(p, m, parse_form(form)?);
            let v = nikulin::primitive_embedding_into_even_unimodular_exists(&inv, l1, l2)?;
            let u = nikulin::unique_primitive_embedding(&inv, l1, l2)?;
            let mut text = match &v.complement {
                Some(c) => format!(
                    "embeds: true\ncomplement ({},{}) {}\n",
                    c.n_plus,
                    c.n_minus,
                    c.form.to_symbol()
                ),
                None => format!(
                    "embeds: false (condition {}: {})\n",
                    v.existence.failed_condition.unwrap_or(0),
                    v.existence.reason
                ),
            };
            text.push_str(&format!("uniqueness: {}\n", u.note));
            let mut j = v.to_json();
            j["unique"] = json!(u.unique);
            j["uniqueness_note"] = json!(u.note);
            Ok(Output::new(text, j))
        }
    }
}

fn saturate(s: &str, r: Option<&str>, root: Option<&str>, cap: u64) -> Result<Output> {
    let q_s = parse_form(s)?;
    let q_r = match (r, root) {
        (Some(r), _) => parse_form(r)?,
        (None, Some(name)) => latticelab::discriminant_form(&lattice::named(name)?)?,
        (None, None) => return Err(invalid("give --r SYMBOL or --root NAME")),
    };
    let ws = nikulin::saturations_keeping_primitive(&q_s, &q_r, cap)?;
    let text: String = ws
        .iter()
        .map(|w| format!("index {}  glue {:?}  form {}\n", w.index, w.glue.gens, w.symbol()))
        .collect();
    Ok(Output::new(
        text,
        json!({ "witnesses": ws.iter().map(|w| w.to_json()).collect::<Vec<_>>() }),
    ))
}

fn table_check(table: TableId, root: PolarizationRoot, row: Option<u32>, threads: usize) -> Result<Output> {
    let mut verdicts = casebook::full_report(table, root, threads)?;
    if let Some(r) = row {
        verdicts.retain(|v| v.record.row == r);
        if verdicts.is_empty() {
            return Err(invalid(format!("{} has no row {r}", table.name())));
        }
    }
    Ok(Output::new(casebook::render_table(&verdicts), casebook::report_json(&verdicts)))
}

fn uniqueness(row: u32) -> Result<Output> {
    let rec = casebook::record(TableId::Hm15, row)?;
    let verdict = casebook::polarized_criterion(&rec, PolarizationRoot::E6)?;
    let rank = rec.rank_s() + PolarizationRoot::E6.lattice().rank();
    let mut seen: BTreeMap<(u64, String), (usize, bool, String)> = BTreeMap::new();
    for w in verdict.witnesses.iter().filter(|w| w.passes()) {
        let inv = LatticeInvariant::new(rank, 0, w.witness.form.clone());
        let u = nikulin::unique_primitive_embedding(&inv, 26, 2)?;
        seen.entry((w.witness.index, w.witness.symbol().to_string()))
            .or_insert((0, u.unique, u.note))
            .0 += 1;
    }
    let mut text = String::new();
    let mut rows = Vec::new();
    for ((index, symbol), (count, unique, note)) in seen {
        text.push_str(&format!("index {index}  form {symbol}  glue groups {count}  {note}\n"));
        rows.push(json!({
            "index": index,
            "symbol": symbol,
            "glue_groups": count,
            "unique": unique,
            "note": note,
        }));
    }
    if rows.is_empty() {
        text.push_str("no saturation embeds\n");
    }
    Ok(Output::new(text, json!({ "row": row, "witnesses": rows })))
}

fn nonsymplectic(row: u32) -> Result<Output> {
    let rec = casebook::record(TableId::Hm15, row)?;
    if rec.rank_s() != 20 {
        return Err(Error::NotMaximalRank);
    }
    let v = casebook::analyze_row(&rec, PolarizationRoot::E6)?;
    if !v.criterion_pass {
        return Err(invalid(format!("row {row} does not pass the embedding criterion")));
    }
    let mut text = String::new();
    for c in &v.classes {
        text.push_str(&format!(
            "T = {}  n = {}  total order {}\n",
            c.t,
            c.n_bar.unwrap_or(1),
            c.total_order.unwrap_or(rec.order)
        ));
    }
    Ok(Output::new(text, json!({ "row": row, "group": rec.group, "classes": v.classes })))
}

fn family_dim(args: &ActionArgs, case: Option<&str>) -> Result<Output> {
    let gens = match case {
        Some(id) => {
            casebook::load_fu_cases()?
                .into_iter()
                .find(|c| c.id == id)
                .ok_or_else(|| invalid(format!("no bundled case {id:?}")))?
                .generators
        }
        None => vec![action(args)?],
    };
    let count = casebook::weights::invariant_monomials(&gens).len();
    let dim = casebook::family_dimension(&gens);
    Ok(Output::new(
        format!("{dim}\n"),
        json!({ "dimension": dim, "monomials": count, "generators": gens }),
    ))
}

fn symplectic(args: &ActionArgs, monomials: &[String], all: bool) -> Result<Output> {
    if all {
        let mut text = String::new();
        let mut rows = Vec::new();
        for case in casebook::load_fu_cases()? {
            let ms = match &case.monomials {
                Some(ms) => ms.clone(),
                None => casebook::weights::invariant_monomials(&case.generators),
            };
            let mut ok = true;
            for g in &case.generators {
                ok &= casebook::symplectic_weight_check(g, &ms)?;
            }
            text.push_str(&format!("case {}: {ok}\n", case.id));
            rows.push(json!({ "id": case.id, "symplectic": ok }));
        }
        return Ok(Output::new(text, json!({ "cases": rows })));
    }
    let act = action(args)?;
    let ms: Vec<[u8; 6]> = if monomials.is_empty() {
        casebook::weights::invariant_monomials(&[act])
    } else {
        monomials.iter().map(|m| parse_monomial(m)).collect::<Result<_>>()?
    };
    let ok = casebook::symplectic_weight_check(&act, &ms)?;
    Ok(Output::new(
        format!("{ok}\n"),
        json!({
            "symplectic": ok,
            "monomials": ms.iter().map(monomial_string).collect::<Vec<_>>(),
        }),
    ))
}
