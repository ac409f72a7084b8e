//! Subcommand dispatch.
//!
//! Exit status: 0 all verdicts pass, 1 a verdict failed, 2 the result is
//! inconclusive (a search ran out of its budget), 3 the input could not
//! be read or parsed.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use cospan_core::actions::{restrict_action, validate_action, ActionDatum, ActionReport};
use cospan_core::algebra::{check_homomorphism, validate_algebra, HomReport, LawReport};
use cospan_core::bounds::SearchBounds;
use cospan_core::descent::{
    check_fully_faithful, check_ua_instance, cross_identity_check,
    essential_surjectivity_witness, extend_action, is_extremal_epi, phi, validate_descent_datum,
    Cospan, DescentError, DescentReport, ExtendMethod, SurjOutcome,
};
use cospan_core::points::Point;

use crate::document::{emit_action, emit_algebra, emit_cospan, emit_hom, DocKind, DocumentSet};
use crate::fixtures;
use crate::report::{Format, Report, Status};
use crate::termsyntax::parse_identity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Oracle,
    Propagate,
}

impl From<MethodArg> for ExtendMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Oracle => ExtendMethod::Oracle,
            MethodArg::Propagate => ExtendMethod::Propagate,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FixtureArg {
    S3,
    Ring,
    Nonassoc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Expect {
    None,
    Unique,
    Multiple,
}

#[derive(Debug, Parser)]
#[command(
    name = "cospan",
    version,
    about = "Descent checks for cospans of finite groups with operations"
)]
struct Cli {
    /// Output format for the report.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Parser)]
struct ExpectFlags {
    /// Expect no extension to exist.
    #[arg(long, conflicts_with_all = ["expect_unique", "expect_multiple"])]
    expect_none: bool,
    /// Expect exactly one extension.
    #[arg(long, conflicts_with = "expect_multiple")]
    expect_unique: bool,
    /// Expect two or more extensions.
    #[arg(long)]
    expect_multiple: bool,
}

impl ExpectFlags {
    fn get(&self) -> Option<Expect> {
        if self.expect_none {
            Some(Expect::None)
        } else if self.expect_unique {
            Some(Expect::Unique)
        } else if self.expect_multiple {
            Some(Expect::Multiple)
        } else {
            None
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check every document in the given files against its own axioms.
    Validate {
        files: Vec<PathBuf>,
    },
    /// Decide uniqueness of action extensions along a cospan. Without
    /// `--cospan`, sweeps every cospan and compatible action pair in the
    /// files.
    UaCheck {
        #[arg(long)]
        cospan: Option<String>,
        #[arg(long)]
        left_action: Option<String>,
        #[arg(long)]
        right_action: Option<String>,
        /// Search method; both searches return the same set when they
        /// complete.
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        /// Node budget for the searches.
        #[arg(long)]
        bound: Option<u64>,
        files: Vec<PathBuf>,
    },
    /// Instance-level descent: validate the images of two points and
    /// check full faithfulness of the comparison between them.
    DescentCheck {
        #[arg(long)]
        cospan: String,
        #[arg(long)]
        point: String,
        #[arg(long)]
        point_q: Option<String>,
        files: Vec<PathBuf>,
    },
    /// List every action of the cospan base restricting to the given
    /// pair.
    Extend {
        #[arg(long)]
        cospan: String,
        #[arg(long)]
        left_action: String,
        #[arg(long)]
        right_action: String,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        #[arg(long)]
        bound: Option<u64>,
        #[command(flatten)]
        expect: ExpectFlags,
        files: Vec<PathBuf>,
    },
    /// Search for a point reconstructing the image datum of the given
    /// point.
    SurjCheck {
        #[arg(long)]
        cospan: String,
        #[arg(long)]
        point: String,
        #[arg(long)]
        bound: Option<u64>,
        files: Vec<PathBuf>,
    },
    /// Cooperation and centralization of two congruences.
    ShCheck {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        files: Vec<PathBuf>,
    },
    /// Reproduce one of the built-in counterexamples over a finite
    /// quotient.
    Counterexample {
        #[arg(value_enum)]
        fixture: FixtureArg,
        /// Reduce the integer carriers modulo this.
        #[arg(long)]
        modulus: usize,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        #[arg(long)]
        bound: Option<u64>,
        #[command(flatten)]
        expect: ExpectFlags,
        /// Also write the fixture as a structure file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Evaluate mixed identities against a pair of actions.
    Identities {
        #[arg(long)]
        left_action: String,
        #[arg(long)]
        right_action: String,
        /// One identity per flag, e.g.
        /// `(= (c.right.mul (x.op.mul x0 x1) c0) (x.op.mul x0 (c.right.mul x1 c0)))`.
        #[arg(long = "identity")]
        identities: Vec<String>,
        files: Vec<PathBuf>,
    },
}

pub fn main_entry() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return code;
        }
    };
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Machine => Format::Machine,
    };
    let started = Instant::now();
    match run(cli.command) {
        Ok(mut report) => {
            report.elapsed_ms = started.elapsed().as_millis() as u64;
            print!("{}", report.render(format));
            if format == Format::Machine {
                println!();
            }
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            3
        }
    }
}

fn load(files: &[PathBuf]) -> Result<DocumentSet> {
    let mut set = DocumentSet::default();
    for file in files {
        let text = std::fs::read_to_string(file)
            .with_context(|| format!("reading {}", file.display()))?;
        set.parse_into(&text, &file.display().to_string()).map_err(|e| anyhow!("{e}"))?;
    }
    Ok(set)
}

fn bounds_from(bound: Option<u64>) -> SearchBounds {
    match bound {
        Some(k) => SearchBounds::with_budget(k),
        None => SearchBounds::default(),
    }
}

fn named<'a, T>(
    map: &'a std::collections::BTreeMap<String, T>,
    name: &str,
    kind: &str,
) -> Result<&'a T> {
    map.get(name).ok_or_else(|| anyhow!("no {kind} named `{name}` in the given files"))
}

fn run(command: Command) -> Result<Report> {
    match command {
        Command::Validate { files } => validate_cmd(&files),
        Command::UaCheck { cospan, left_action, right_action, method, bound, files } => {
            ua_check_cmd(cospan, left_action, right_action, method, bound, &files)
        }
        Command::DescentCheck { cospan, point, point_q, files } => {
            descent_check_cmd(&cospan, &point, point_q.as_deref(), &files)
        }
        Command::Extend { cospan, left_action, right_action, method, bound, expect, files } => {
            extend_cmd(&cospan, &left_action, &right_action, method, bound, expect.get(), &files)
        }
        Command::SurjCheck { cospan, point, bound, files } => {
            surj_check_cmd(&cospan, &point, bound, &files)
        }
        Command::ShCheck { left, right, files } => sh_check_cmd(&left, &right, &files),
        Command::Counterexample { fixture, modulus, method, bound, expect, emit } => {
            counterexample_cmd(fixture, modulus, method, bound, expect.get(), emit.as_deref())
        }
        Command::Identities { left_action, right_action, identities, files } => {
            identities_cmd(&left_action, &right_action, &identities, &files)
        }
    }
}

fn law_verdict(report: &mut Report, name: &str, outcome: LawReport, labels: &[String]) {
    match outcome {
        LawReport::Pass => report.verdict(name, Status::Pass, "all laws hold"),
        LawReport::Violation { law, witness } => {
            let rendered: Vec<String> =
                witness.iter().map(|&i| labels.get(i).cloned().unwrap_or_default()).collect();
            report.verdict(name, Status::Fail, format!("violates {law}"));
            report.witness(format!("{name} {law}"), witness, rendered);
        }
    }
}

fn validate_cmd(files: &[PathBuf]) -> Result<Report> {
    let set = load(files)?;
    let mut report = Report::new("validate".into());
    for (kind, name) in &set.order {
        match kind {
            DocKind::Algebra => {
                let alg = &set.algebras[name];
                let outcome = validate_algebra(alg).map_err(|e| anyhow!("{name}: {e}"))?;
                law_verdict(&mut report, &format!("algebra {name}"), outcome, &alg.labels);
            }
            DocKind::Hom => {
                let hom = &set.homs[name];
                match check_homomorphism(hom) {
                    HomReport::Pass => report.verdict(
                        &format!("hom {name}"),
                        Status::Pass,
                        "preserves all operations",
                    ),
                    HomReport::Violation { equation, witness } => {
                        let labels: Vec<String> =
                            witness.iter().map(|&i| hom.source().label(i).to_string()).collect();
                        report.verdict(
                            &format!("hom {name}"),
                            Status::Fail,
                            format!("breaks {equation}"),
                        );
                        report.witness(format!("hom {name}"), witness, labels);
                    }
                }
            }
            DocKind::Action => {
                let xi = &set.actions[name];
                let laws = xi.actor().signature.clone();
                match validate_action(xi, &laws).map_err(|e| anyhow!("{name}: {e}"))? {
                    ActionReport::Valid => report.verdict(
                        &format!("action {name}"),
                        Status::Pass,
                        "split extension lies in the category",
                    ),
                    ActionReport::Invalid(v) => {
                        let labels: Vec<String> = v
                            .witness
                            .iter()
                            .map(|&w| cospan_core::actions::render_pair(xi, w))
                            .collect();
                        let indices =
                            v.witness.iter().flat_map(|&(x, b)| [x, b]).collect();
                        report.verdict(
                            &format!("action {name}"),
                            Status::Fail,
                            format!("violates {}", v.law),
                        );
                        report.witness(format!("action {name} {}", v.law), indices, labels);
                    }
                }
            }
            DocKind::Point => {
                let doc = &set.points[name];
                let verdict = doc.to_point().and_then(|p| p.check());
                match verdict {
                    Ok(()) => {
                        report.verdict(&format!("point {name}"), Status::Pass, "split epimorphism")
                    }
                    Err(e) => {
                        report.verdict(&format!("point {name}"), Status::Fail, format!("{e}"))
                    }
                }
            }
            DocKind::Cospan => {
                let doc = &set.cospans[name];
                match doc.to_cospan() {
                    Ok(cs) => {
                        let extremal = is_extremal_epi(&cs);
                        report.verdict(
                            &format!("cospan {name}"),
                            Status::Pass,
                            format!("extremal-epi: {extremal}"),
                        );
                    }
                    Err(e) => {
                        report.verdict(&format!("cospan {name}"), Status::Fail, format!("{e}"))
                    }
                }
            }
            DocKind::Congruence => {
                let doc = &set.congruences[name];
                match doc.to_congruence() {
                    Ok(_) => report.verdict(
                        &format!("congruence {name}"),
                        Status::Pass,
                        "compatible equivalence relation",
                    ),
                    Err(e) => {
                        report.verdict(&format!("congruence {name}"), Status::Fail, format!("{e}"))
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Runs one extension search, mapping a budget overrun to an
/// inconclusive note instead of an error.
fn extensions_verdict(
    report: &mut Report,
    label: &str,
    cs: &Cospan,
    xi_a: &ActionDatum,
    xi_c: &ActionDatum,
    method: ExtendMethod,
    bounds: &SearchBounds,
) -> Result<Option<Vec<ActionDatum>>> {
    match extend_action(cs, xi_a, xi_c, method, bounds) {
        Ok(found) => {
            report.verdict(label, Status::Info, format!("{} extension(s)", found.len()));
            Ok(Some(found))
        }
        Err(DescentError::Limit(limit)) => {
            report.verdict(label, Status::Info, format!("inconclusive: {limit}"));
            Ok(None)
        }
        Err(DescentError::Structure(e)) => Err(anyhow!("{e}")),
    }
}

fn expectation_verdict(report: &mut Report, expect: Expect, count: Option<usize>) {
    let name = match expect {
        Expect::None => "expect-none",
        Expect::Unique => "expect-unique",
        Expect::Multiple => "expect-multiple",
    };
    match count {
        None => {
            report.verdict(name, Status::Info, "no definitive extension count");
            report.inconclusive = true;
        }
        Some(count) => {
            let ok = match expect {
                Expect::None => count == 0,
                Expect::Unique => count == 1,
                Expect::Multiple => count >= 2,
            };
            report.verdict(
                name,
                if ok { Status::Pass } else { Status::Fail },
                format!("{count} extension(s)"),
            );
        }
    }
}

fn methods_to_run(method: Option<MethodArg>) -> Vec<(ExtendMethod, &'static str)> {
    match method {
        Some(m) => vec![(
            m.into(),
            match m {
                MethodArg::Oracle => "extensions-oracle",
                MethodArg::Propagate => "extensions-propagate",
            },
        )],
        None => vec![
            (ExtendMethod::Oracle, "extensions-oracle"),
            (ExtendMethod::Propagate, "extensions-propagate"),
        ],
    }
}

fn emit_extension_verdicts(report: &mut Report, found: &[ActionDatum]) {
    for (i, xi) in found.iter().enumerate() {
        let doc = emit_action(&format!("ext{i}"), xi, &xi.actor().name, &xi.acted().name);
        report.verdict(&format!("extension[{i}]"), Status::Info, doc);
    }
}

#[allow(clippy::too_many_arguments)]
fn extend_cmd(
    cospan: &str,
    left_action: &str,
    right_action: &str,
    method: Option<MethodArg>,
    bound: Option<u64>,
    expect: Option<Expect>,
    files: &[PathBuf],
) -> Result<Report> {
    let set = load(files)?;
    let cs = named(&set.cospans, cospan, "cospan")?.to_cospan().map_err(|e| anyhow!("{e}"))?;
    let xi_a = named(&set.actions, left_action, "action")?;
    let xi_c = named(&set.actions, right_action, "action")?;
    let bounds = bounds_from(bound);
    let mut report = Report::new(format!(
        "extend --cospan {cospan} --left-action {left_action} --right-action {right_action}"
    ));
    report.verdict(
        "extremal-epi",
        Status::Info,
        format!("{}", is_extremal_epi(&cs)),
    );
    let mut definitive = None;
    for (m, label) in methods_to_run(method) {
        if let Some(found) = extensions_verdict(&mut report, label, &cs, xi_a, xi_c, m, &bounds)? {
            if definitive.is_none() {
                emit_extension_verdicts(&mut report, &found);
            }
            definitive = Some(found);
        }
    }
    if definitive.is_none() {
        report.inconclusive = true;
    }
    if let Some(expect) = expect {
        expectation_verdict(&mut report, expect, definitive.as_ref().map(Vec::len));
    }
    Ok(report)
}

fn ua_single(
    report: &mut Report,
    label: &str,
    cs: &Cospan,
    xi_a: &ActionDatum,
    xi_c: &ActionDatum,
    method: ExtendMethod,
    bounds: &SearchBounds,
) -> Result<Option<bool>> {
    match check_ua_instance(cs, xi_a, xi_c, method, bounds) {
        Ok(verdict) => {
            report.verdict(
                label,
                if verdict.holds { Status::Pass } else { Status::Fail },
                format!("{} extension(s)", verdict.extensions.len()),
            );
            Ok(Some(verdict.holds))
        }
        Err(DescentError::Limit(limit)) => {
            report.verdict(label, Status::Info, format!("inconclusive: {limit}"));
            report.inconclusive = true;
            Ok(None)
        }
        Err(DescentError::Structure(e)) => Err(anyhow!("{e}")),
    }
}

fn ua_check_cmd(
    cospan: Option<String>,
    left_action: Option<String>,
    right_action: Option<String>,
    method: Option<MethodArg>,
    bound: Option<u64>,
    files: &[PathBuf],
) -> Result<Report> {
    let set = load(files)?;
    let bounds = bounds_from(bound);
    let method = method.map(ExtendMethod::from).unwrap_or(ExtendMethod::Propagate);
    let mut report = Report::new("ua-check".into());
    match (&cospan, &left_action, &right_action) {
        (Some(cs_name), Some(a_name), Some(c_name)) => {
            let cs = named(&set.cospans, cs_name, "cospan")?
                .to_cospan()
                .map_err(|e| anyhow!("{e}"))?;
            report.verdict("extremal-epi", Status::Info, format!("{}", is_extremal_epi(&cs)));
            let xi_a = named(&set.actions, a_name, "action")?;
            let xi_c = named(&set.actions, c_name, "action")?;
            ua_single(&mut report, "ua", &cs, xi_a, xi_c, method, &bounds)?;
        }
        _ => {
            // sweep every cospan and compatible action pair
            let mut all_hold = true;
            let mut total = 0usize;
            for (cs_name, doc) in &set.cospans {
                if cospan.as_deref().is_some_and(|w| w != cs_name) {
                    continue;
                }
                let cs = doc.to_cospan().map_err(|e| anyhow!("{e}"))?;
                for (a_name, xi_a) in &set.actions {
                    if left_action.as_deref().is_some_and(|w| w != a_name) {
                        continue;
                    }
                    if xi_a.actor() != cs.f.source() {
                        continue;
                    }
                    for (c_name, xi_c) in &set.actions {
                        if right_action.as_deref().is_some_and(|w| w != c_name) {
                            continue;
                        }
                        if xi_c.actor() != cs.g.source() || xi_a.acted() != xi_c.acted() {
                            continue;
                        }
                        total += 1;
                        let label = format!("ua {cs_name} {a_name} {c_name}");
                        match ua_single(&mut report, &label, &cs, xi_a, xi_c, method, &bounds)? {
                            Some(holds) => all_hold &= holds,
                            None => all_hold = false,
                        }
                    }
                }
            }
            report.verdict(
                "ua-summary",
                if total > 0 && all_hold { Status::Pass } else { Status::Info },
                format!("{total} instance(s) checked"),
            );
        }
    }
    Ok(report)
}

fn resolve_point(set: &DocumentSet, name: &str, cs: &Cospan) -> Result<Point> {
    let point =
        named(&set.points, name, "point")?.to_point().map_err(|e| anyhow!("point `{name}`: {e}"))?;
    if point.base() != cs.base() {
        bail!(
            "point `{name}` lives over {}, the cospan base is {}",
            point.base().name,
            cs.base().name
        );
    }
    Ok(point)
}

fn descent_check_cmd(
    cospan: &str,
    point: &str,
    point_q: Option<&str>,
    files: &[PathBuf],
) -> Result<Report> {
    let set = load(files)?;
    let cs = named(&set.cospans, cospan, "cospan")?.to_cospan().map_err(|e| anyhow!("{e}"))?;
    let p = resolve_point(&set, point, &cs)?;
    let q = match point_q {
        Some(name) => resolve_point(&set, name, &cs)?,
        None => p.clone(),
    };
    let mut report = Report::new(format!("descent-check --cospan {cospan} --point {point}"));
    report.verdict("extremal-epi", Status::Info, format!("{}", is_extremal_epi(&cs)));
    for (name, pt) in [("datum-p", &p), ("datum-q", &q)] {
        let datum = phi(&cs, pt);
        match validate_descent_datum(&cs, &datum).map_err(|e| anyhow!("{e}"))? {
            DescentReport::Valid => {
                report.verdict(name, Status::Pass, "unit and cocycle conditions hold")
            }
            DescentReport::Invalid { diagram, witness } => {
                report.verdict(name, Status::Fail, format!("{diagram} fails"));
                if let Some((idx, label)) = witness {
                    report.witness(format!("{name} {diagram}"), vec![idx], vec![label]);
                }
            }
        }
    }
    let ff = check_fully_faithful(&cs, &p, &q).map_err(|e| anyhow!("{e}"))?;
    report.verdict(
        "faithful",
        if ff.faithful { Status::Pass } else { Status::Fail },
        format!("{} point morphism(s)", ff.point_morphisms),
    );
    report.verdict(
        "full",
        if ff.full { Status::Pass } else { Status::Fail },
        format!("{} descent morphism(s)", ff.descent_morphisms),
    );
    if let Some((h, k)) = ff.unmatched {
        let labels = vec![format!("h map {h:?}"), format!("k map {k:?}")];
        report.witness("descent morphism without preimage", vec![], labels);
    }
    Ok(report)
}

fn surj_check_cmd(
    cospan: &str,
    point: &str,
    bound: Option<u64>,
    files: &[PathBuf],
) -> Result<Report> {
    let set = load(files)?;
    let cs = named(&set.cospans, cospan, "cospan")?.to_cospan().map_err(|e| anyhow!("{e}"))?;
    let p = resolve_point(&set, point, &cs)?;
    let bounds = bounds_from(bound);
    let mut report = Report::new(format!("surj-check --cospan {cospan} --point {point}"));
    let datum = phi(&cs, &p);
    match essential_surjectivity_witness(&cs, &datum, &bounds) {
        Ok(SurjOutcome::Witness(w)) => {
            report.verdict(
                "representable",
                Status::Pass,
                format!("witness point with total of size {}", w.total().size),
            );
        }
        Ok(SurjOutcome::DefinitiveNone) => {
            report.verdict("representable", Status::Fail, "no point reconstructs the datum");
        }
        Err(DescentError::Limit(limit)) => {
            report.verdict("representable", Status::Info, format!("inconclusive: {limit}"));
            report.inconclusive = true;
        }
        Err(DescentError::Structure(e)) => bail!("{e}"),
    }
    Ok(report)
}

fn sh_check_cmd(left: &str, right: &str, files: &[PathBuf]) -> Result<Report> {
    let set = load(files)?;
    let r = named(&set.congruences, left, "congruence")?
        .to_congruence()
        .map_err(|e| anyhow!("congruence `{left}`: {e}"))?;
    let s = named(&set.congruences, right, "congruence")?
        .to_congruence()
        .map_err(|e| anyhow!("congruence `{right}`: {e}"))?;
    let verdict = cospan_core::congruence::check_sh_instance(&r, &s).map_err(|e| anyhow!("{e}"))?;
    let mut report = Report::new(format!("sh-check --left {left} --right {right}"));
    report.verdict("cooperates", Status::Info, format!("{}", verdict.cooperates));
    report.verdict("connects", Status::Info, format!("{}", verdict.connects));
    report.verdict(
        "sh-respected",
        if verdict.sh_respected { Status::Pass } else { Status::Fail },
        "cooperation implies connection",
    );
    Ok(report)
}

fn identities_cmd(
    left_action: &str,
    right_action: &str,
    identities: &[String],
    files: &[PathBuf],
) -> Result<Report> {
    let set = load(files)?;
    let xi_a = named(&set.actions, left_action, "action")?;
    let xi_c = named(&set.actions, right_action, "action")?;
    let parsed: Vec<_> = identities
        .iter()
        .map(|text| parse_identity(text))
        .collect::<Result<_>>()
        .context("parsing identities")?;
    let violations = cross_identity_check(xi_a, xi_c, &parsed).map_err(|e| anyhow!("{e}"))?;
    let mut report = Report::new(format!(
        "identities --left-action {left_action} --right-action {right_action}"
    ));
    for (i, id) in parsed.iter().enumerate() {
        let count = violations.iter().filter(|v| v.identity == i).count();
        report.verdict(
            &format!("identity[{i}]"),
            if count == 0 { Status::Pass } else { Status::Fail },
            format!("{}: {count} violation(s)", id.display),
        );
    }
    let acted = xi_a.acted();
    for v in violations.iter().take(8) {
        let mut indices = Vec::new();
        let mut labels = Vec::new();
        for &x in &v.acted_vars {
            indices.push(x);
            labels.push(acted.label(x).to_string());
        }
        for &a in &v.actor_a_vars {
            indices.push(a);
            labels.push(xi_a.actor().label(a).to_string());
        }
        for &c in &v.actor_c_vars {
            indices.push(c);
            labels.push(xi_c.actor().label(c).to_string());
        }
        indices.push(v.lhs_value);
        labels.push(format!("lhs={}", acted.label(v.lhs_value)));
        indices.push(v.rhs_value);
        labels.push(format!("rhs={}", acted.label(v.rhs_value)));
        report.witness(format!("identity[{}] violation", v.identity), indices, labels);
    }
    Ok(report)
}

fn counterexample_cmd(
    fixture: FixtureArg,
    modulus: usize,
    method: Option<MethodArg>,
    bound: Option<u64>,
    expect: Option<Expect>,
    emit: Option<&Path>,
) -> Result<Report> {
    if modulus < 2 {
        bail!("modulus must be at least 2");
    }
    let bounds = bounds_from(bound);
    match fixture {
        FixtureArg::S3 => s3_cmd(modulus, method, &bounds, expect, emit),
        FixtureArg::Ring => ring_cmd(modulus, emit),
        FixtureArg::Nonassoc => nonassoc_cmd(modulus, method, &bounds, expect, emit),
    }
}

fn s3_cmd(
    n: usize,
    method: Option<MethodArg>,
    bounds: &SearchBounds,
    expect: Option<Expect>,
    emit: Option<&Path>,
) -> Result<Report> {
    let fx = fixtures::fixture_s3(n)?;
    let mut report = Report::new(format!("counterexample s3 --modulus {n}"));
    let group = cospan_core::algebra::Signature::group();
    let ok = validate_action(&fx.rho, &group)?.is_valid()
        && validate_action(&fx.tau, &group)?.is_valid()
        && is_extremal_epi(&fx.cospan);
    report.verdict(
        "fixture-valid",
        if ok { Status::Pass } else { Status::Fail },
        "actions valid, cospan extremal-epi",
    );
    // both evaluations name the same group element, so a common
    // extension is impossible
    for (context, value) in &fx.forced {
        report.witness(context.clone(), vec![*value], vec![fx.rho.acted().label(*value).to_string()]);
    }
    report.verdict(
        "forced-values-conflict",
        if fx.forced[0].1 != fx.forced[1].1 { Status::Pass } else { Status::Fail },
        "s+r2 and r+s are the same element but force different values",
    );
    let mut definitive = None;
    for (m, label) in methods_to_run(method) {
        if let Some(found) =
            extensions_verdict(&mut report, label, &fx.cospan, &fx.rho, &fx.tau, m, bounds)?
        {
            definitive = Some(found);
        }
    }
    if definitive.is_none() {
        report.inconclusive = true;
    }
    expectation_verdict(
        &mut report,
        expect.unwrap_or(Expect::None),
        definitive.as_ref().map(Vec::len),
    );
    if let Some(path) = emit {
        let mut text = String::new();
        text.push_str(&emit_algebra("C3", fx.cospan.f.source()));
        text.push_str(&emit_algebra("C2", fx.cospan.g.source()));
        text.push_str(&emit_algebra("S3", fx.cospan.base()));
        text.push_str(&emit_algebra("X", fx.rho.acted()));
        text.push_str(&emit_hom("f", &fx.cospan.f, "C3", "S3"));
        text.push_str(&emit_hom("g", &fx.cospan.g, "C2", "S3"));
        text.push_str(&emit_cospan("cs", "f", "g"));
        text.push_str(&emit_action("rho", &fx.rho, "C3", "X"));
        text.push_str(&emit_action("tau", &fx.tau, "C2", "X"));
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(report)
}

fn ring_cmd(n: usize, emit: Option<&Path>) -> Result<Report> {
    let fx = fixtures::fixture_ring(n)?;
    let mut report = Report::new(format!("counterexample ring --modulus {n}"));
    let rng = cospan_core::algebra::Signature::ring("mul");
    let ring_ok = validate_algebra(&fx.ring)?.is_pass();
    report.verdict(
        "ring-valid",
        if ring_ok { Status::Pass } else { Status::Fail },
        "lower-triangular matrices form an associative ring",
    );
    let mul_ok = validate_action(&fx.xi_mul, &rng)?.is_valid();
    report.verdict(
        "multiplication-action-valid",
        if mul_ok { Status::Pass } else { Status::Fail },
        "two-sided multiplication is a ring action",
    );
    match validate_action(&fx.xi_scale, &rng)? {
        ActionReport::Invalid(v) => {
            report.verdict(
                "scaling-action-split-extension",
                Status::Info,
                format!(
                    "the diagonal scaling tables do not form an associative split extension \
                     (fails {}); the identity arithmetic below carries the counterexample",
                    v.law
                ),
            );
        }
        ActionReport::Valid => {
            report.verdict("scaling-action-split-extension", Status::Fail, "unexpectedly valid");
        }
    }
    let violations = cross_identity_check(&fx.xi_mul, &fx.xi_scale, &fx.identities)?;
    let (r, s, c) = fx.witness;
    let canonical = violations
        .iter()
        .find(|v| v.acted_vars == vec![r, s] && v.actor_c_vars == vec![c]);
    report.verdict(
        "identity-violated",
        if canonical.is_some() { Status::Pass } else { Status::Fail },
        format!(
            "(x0 mul x1) . c0 = x0 mul (x1 . c0) has {} violation(s)",
            violations.len()
        ),
    );
    if let Some(v) = canonical {
        report.witness(
            "violation at r = s = (1 0; 1 1), c = 1",
            vec![r, s, c, v.lhs_value, v.rhs_value],
            vec![
                fx.ring.label(r).to_string(),
                fx.ring.label(s).to_string(),
                fx.scalars.label(c).to_string(),
                format!("lhs={}", fx.ring.label(v.lhs_value)),
                format!("rhs={}", fx.ring.label(v.rhs_value)),
            ],
        );
    }
    if let Some(path) = emit {
        let mut text = String::new();
        text.push_str(&emit_algebra("R", &fx.ring));
        text.push_str(&emit_algebra("Z", &fx.scalars));
        text.push_str(&emit_action("mul_action", &fx.xi_mul, "R", "R"));
        text.push_str(&emit_action("scale_action", &fx.xi_scale, "Z", "R"));
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(report)
}

fn nonassoc_cmd(
    n: usize,
    method: Option<MethodArg>,
    bounds: &SearchBounds,
    expect: Option<Expect>,
    emit: Option<&Path>,
) -> Result<Report> {
    let fx = fixtures::fixture_nonassoc(n)?;
    let mut report = Report::new(format!("counterexample nonassoc --modulus {n}"));
    let nar = cospan_core::algebra::Signature::nonassociative_ring("mul");
    let rng = cospan_core::algebra::Signature::ring("mul");
    report.verdict(
        "ring-valid",
        if validate_algebra(&fx.ring)?.is_pass() { Status::Pass } else { Status::Fail },
        "the span ring is a non-associative ring",
    );
    let actions_ok =
        validate_action(&fx.xi, &nar)?.is_valid() && validate_action(&fx.tau, &nar)?.is_valid();
    report.verdict(
        "actions-valid",
        if actions_ok { Status::Pass } else { Status::Fail },
        "both actions are valid without associativity",
    );
    match validate_action(&fx.xi, &rng)? {
        ActionReport::Invalid(v) => {
            let labels: Vec<String> =
                v.witness.iter().map(|&w| cospan_core::actions::render_pair(&fx.xi, w)).collect();
            let indices = v.witness.iter().flat_map(|&(x, b)| [x, b]).collect();
            report.verdict(
                "associative-rejection",
                Status::Pass,
                format!("violates {} as required", v.law),
            );
            report.witness("associativity fails at", indices, labels);
        }
        ActionReport::Valid => {
            report.verdict("associative-rejection", Status::Fail, "unexpectedly valid");
        }
    }
    let xa = restrict_action(&fx.cospan.f, &fx.xi);
    let xc = restrict_action(&fx.cospan.g, &fx.xi);
    let agree = xa == restrict_action(&fx.cospan.f, &fx.tau)
        && xc == restrict_action(&fx.cospan.g, &fx.tau);
    report.verdict(
        "restrictions-agree",
        if agree { Status::Pass } else { Status::Fail },
        "both actions restrict identically to the axes",
    );
    report.verdict(
        "extremal-epi",
        if is_extremal_epi(&fx.cospan) { Status::Pass } else { Status::Fail },
        "the axes generate the span ring",
    );
    let mut definitive = None;
    for (m, label) in methods_to_run(method) {
        if let Some(found) =
            extensions_verdict(&mut report, label, &fx.cospan, &xa, &xc, m, bounds)?
        {
            definitive = Some(found);
        }
    }
    match &definitive {
        Some(found) => {
            let has_both = found.contains(&fx.xi) && found.contains(&fx.tau);
            report.verdict(
                "ua-violated",
                if found.len() >= 2 && has_both { Status::Pass } else { Status::Fail },
                format!(
                    "{} extension(s); contains both named actions: {has_both}",
                    found.len()
                ),
            );
        }
        None => report.inconclusive = true,
    }
    if let Some(expect) = expect {
        expectation_verdict(&mut report, expect, definitive.as_ref().map(Vec::len));
    }
    if let Some(path) = emit {
        let mut text = String::new();
        text.push_str(&emit_algebra("A", &fx.ring));
        text.push_str(&emit_algebra("Zn", &fx.acted));
        text.push_str(&emit_algebra("X", fx.cospan.f.source()));
        text.push_str(&emit_algebra("Y", fx.cospan.g.source()));
        text.push_str(&emit_hom("i", &fx.cospan.f, "X", "A"));
        text.push_str(&emit_hom("j", &fx.cospan.g, "Y", "A"));
        text.push_str(&emit_cospan("cs", "i", "j"));
        text.push_str(&emit_action("xi", &fx.xi, "A", "Zn"));
        text.push_str(&emit_action("tau", &fx.tau, "A", "Zn"));
        text.push_str(&emit_action("xres", &xa, "X", "Zn"));
        text.push_str(&emit_action("yres", &xc, "Y", "Zn"));
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(report)
}
