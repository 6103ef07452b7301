//! The `redgit` command-line front end.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bundle::{
    adjoint_degrees, adjoint_semistable, canonical_destabilizer, levi_induced_semistable, split_semistable,
    split_semistable_bruteforce,
};
use crate::change_of_group::{destabilizing_witness, is_adapted, push_degree};
use crate::error::{Error, ErrorClass, Result};
use crate::exact_linalg::{QMat, QSubspace, QVec, Rational, DEFAULT_CLOSURE_CAP};
use crate::io::{degree_path, Bundle, DegreeFile, Loader};
use crate::kirwan::{
    candidate_betas_capped, hm_weight, instability, is_polystable, is_semistable, is_stable, stratify_supports_capped,
    verify_recursion_capped, LinearizedAction, StratumData, SupportPattern, DEFAULT_CANDIDATE_CAP,
    DEFAULT_PATTERN_CAP,
};
use crate::root_datum::{
    central_cocharacters, connected_weyl_group, parabolic, rational_characters, root_kernel, trace_form, weyl_group,
    GroupData,
};

#[derive(Parser, Debug)]
#[command(name = "redgit", about = "Exact computations for reductive groups, bundle degrees and GIT stratifications")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Upper bound on the size of generated Weyl groups.
    #[arg(long, global = true, default_value_t = DEFAULT_CLOSURE_CAP)]
    pub cap_closure: usize,
    /// Upper bound on enumerated subsets and support patterns.
    #[arg(long, global = true)]
    pub cap_subsets: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Weyl group order and generators.
    Weyl(GroupArgs),
    /// Rational characters, central cocharacters and the root kernel.
    Invariants(GroupArgs),
    /// Gram matrix of the trace form.
    TraceForm(GroupArgs),
    /// Parabolic and Levi roots of a cocharacter.
    Parabolic(ParabolicArgs),
    /// Is the degree adapted to the homomorphism?
    Adapted(HomArgs),
    /// Image of a degree under a homomorphism.
    PushDegree(HomArgs),
    /// Destabilizing cocharacter of the pushed bundle.
    Witness(HomArgs),
    /// Semistability of a split or Levi-induced bundle.
    BundleSs(BundleArgs),
    /// Canonical destabilizing cocharacter of a split bundle.
    Destabilizer(BundleArgs),
    /// Semistable, polystable and stable tests for support patterns.
    GitClassify(ClassifyArgs),
    /// Instability strata and the support patterns in each.
    GitStrata(ActionArgs),
    /// Checks the partition, monotonicity and centre recursion.
    GitVerify(ActionArgs),
}

#[derive(Args, Debug)]
pub struct GroupArgs {
    #[arg(long)]
    pub group: PathBuf,
}

#[derive(Args, Debug)]
pub struct ParabolicArgs {
    #[arg(long)]
    pub group: PathBuf,
    /// Comma-separated rational coordinates, e.g. `1,0,-1/2`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_vector)]
    pub lambda: QVec,
}

#[derive(Args, Debug)]
pub struct HomArgs {
    #[arg(long)]
    pub hom: PathBuf,
    /// Degree on the source group.
    #[arg(long)]
    pub degree: PathBuf,
}

#[derive(Args, Debug)]
pub struct BundleArgs {
    #[arg(long)]
    pub bundle: PathBuf,
}

#[derive(Args, Debug)]
pub struct ActionArgs {
    #[arg(long)]
    pub action: PathBuf,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub action: PathBuf,
    /// Comma-separated weight indices; all patterns when omitted.
    #[arg(long, value_parser = parse_support)]
    pub support: Option<SupportPattern>,
}

fn parse_vector(s: &str) -> std::result::Result<QVec, String> {
    s.split(',').map(|x| x.trim().parse::<Rational>().map_err(|e| e.to_string())).collect()
}

fn parse_support(s: &str) -> std::result::Result<SupportPattern, String> {
    let idx = s.split(',').map(|x| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"))).collect::<std::result::Result<Vec<_>, _>>()?;
    SupportPattern::new(idx).map_err(|e| e.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeylOut {
    pub order: usize,
    pub connected_order: usize,
    pub generators: Vec<QMat>,
    pub elements: Vec<QMat>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsOut {
    pub rational_characters: QSubspace,
    pub central_cocharacters: QSubspace,
    pub root_kernel: QSubspace,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceFormOut {
    pub gram: QMat,
    pub kernel: QSubspace,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicOut {
    pub lambda: QVec,
    pub parabolic_roots: Vec<QVec>,
    pub levi_roots: Vec<QVec>,
    pub levi_weyl_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdaptedOut {
    pub adapted: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PushOut {
    pub image: QVec,
    pub degree: DegreeFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessOut {
    pub lambda_prime: QVec,
    pub weight: Rational,
    pub parabolic_roots: Vec<QVec>,
    pub levi_roots: Vec<QVec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleSsOut {
    pub kind: String,
    pub semistable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parabolic_criterion: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adjoint: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adjoint_degrees: Option<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DestabilizerOut {
    pub semistable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_star: Option<QVec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub translate: Option<QVec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_squared: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternOut {
    pub support: SupportPattern,
    pub semistable: bool,
    pub polystable: bool,
    pub stable: bool,
    pub label: QVec,
    pub m_squared: Rational,
    /// `m(x, λ_β)`.
    pub hm_weight: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumOut {
    pub label: QVec,
    pub m_squared: Rational,
    pub lambda_beta: QVec,
    pub centre: Vec<usize>,
    pub attractor: Vec<usize>,
    pub parabolic_roots: Vec<QVec>,
    pub levi_roots: Vec<QVec>,
    pub shifted_shift: QVec,
    pub supports: Vec<SupportPattern>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionOut {
    pub label: QVec,
    pub recursion: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOut {
    pub patterns: usize,
    pub partition: bool,
    pub monotone: bool,
    pub strata: Vec<RecursionOut>,
    pub verified: bool,
}

/// Parses `args` (including the program name), runs the command, and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e.class() {
        ErrorClass::InvalidInput => 1,
        ErrorClass::CapExceeded => 2,
        ErrorClass::Unsupported => 3,
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output types serialize");
    s.push('\n');
    s
}

fn no_dot(cli: &Cli) -> Result<()> {
    if cli.format == Format::Dot {
        return Err(Error::Parse("dot output is only available for git-strata".into()));
    }
    Ok(())
}

fn render<T: Serialize>(cli: &Cli, v: &T, text: impl FnOnce(&T) -> String) -> Result<String> {
    no_dot(cli)?;
    Ok(match cli.format {
        Format::Json => json(v),
        _ => text(v),
    })
}

fn matrix_text(m: &QMat) -> String {
    let rows: Vec<String> = m.row_vecs().iter().map(|r| format!("[{}]", join(r.iter()))).collect();
    format!("[{}]", rows.join(", "))
}

fn join<T: std::fmt::Display>(it: impl IntoIterator<Item = T>) -> String {
    it.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn list_text<T: std::fmt::Display>(v: &[T]) -> String {
    if v.is_empty() {
        return "none".into();
    }
    join(v)
}

fn subspace_text(s: &QSubspace) -> String {
    if s.dim() == 0 {
        return "0".into();
    }
    format!("span{{{}}}", join(s.basis_vectors()))
}

fn roots(g: &GroupData, idx: &[usize]) -> Vec<QVec> {
    idx.iter().map(|&i| g.datum().roots()[i].clone()).collect()
}

fn execute(cli: &Cli) -> Result<String> {
    let loader = Loader::new(".", cli.cap_closure);
    let pattern_cap = cli.cap_subsets.unwrap_or(DEFAULT_PATTERN_CAP);
    let candidate_cap = cli.cap_subsets.unwrap_or(DEFAULT_CANDIDATE_CAP);
    match &cli.command {
        Command::Weyl(a) => {
            let g = loader.group_path(&a.group)?;
            let w = weyl_group(&g)?;
            let v = WeylOut {
                order: w.order(),
                connected_order: connected_weyl_group(&g)?.order(),
                generators: w.generators().to_vec(),
                elements: w.elements().to_vec(),
            };
            render(cli, &v, |v| {
                let mut s = format!("order: {}\nconnected order: {}\ngenerators:\n", v.order, v.connected_order);
                for m in &v.generators {
                    let _ = writeln!(s, "  {}", matrix_text(m));
                }
                s
            })
        }
        Command::Invariants(a) => {
            let g = loader.group_path(&a.group)?;
            let v = InvariantsOut {
                rational_characters: rational_characters(&g)?,
                central_cocharacters: central_cocharacters(&g)?,
                root_kernel: root_kernel(g.datum()),
            };
            render(cli, &v, |v| {
                format!(
                    "rational characters: {}\ncentral cocharacters: {}\nroot kernel: {}\n",
                    subspace_text(&v.rational_characters),
                    subspace_text(&v.central_cocharacters),
                    subspace_text(&v.root_kernel)
                )
            })
        }
        Command::TraceForm(a) => {
            let g = loader.group_path(&a.group)?;
            let gram = trace_form(&g);
            let v = TraceFormOut { kernel: QSubspace::kernel_of(&gram), gram };
            render(cli, &v, |v| format!("gram: {}\nkernel: {}\n", matrix_text(&v.gram), subspace_text(&v.kernel)))
        }
        Command::Parabolic(a) => {
            let g = loader.group_path(&a.group)?;
            let p = parabolic(&g, &a.lambda)?;
            let v = ParabolicOut {
                lambda: p.lambda.clone(),
                parabolic_roots: roots(&g, &p.parabolic_roots),
                levi_roots: roots(&g, &p.levi_roots),
                levi_weyl_order: p.levi_weyl.order(),
            };
            render(cli, &v, |v| {
                format!(
                    "lambda: {}\nparabolic roots: {}\nlevi roots: {}\nlevi weyl order: {}\n",
                    v.lambda,
                    list_text(&v.parabolic_roots),
                    list_text(&v.levi_roots),
                    v.levi_weyl_order
                )
            })
        }
        Command::Adapted(a) => {
            let f = loader.hom_path(&a.hom)?;
            let deg = degree_path(f.source(), &a.degree)?;
            let v = AdaptedOut { adapted: is_adapted(&f, &deg)? };
            render(cli, &v, |v| format!("adapted: {}\n", v.adapted))
        }
        Command::PushDegree(a) => {
            let f = loader.hom_path(&a.hom)?;
            let deg = degree_path(f.source(), &a.degree)?;
            let p = push_degree(&f, &deg)?;
            let v = PushOut { image: p.image, degree: DegreeFile::from_degree(&p.degree) };
            render(cli, &v, |v| {
                format!(
                    "image: {}\nF: {}\nd: {}\n",
                    v.image,
                    v.degree.subgroup.join(", "),
                    v.degree.d.as_ref().expect("pushed degrees carry d")
                )
            })
        }
        Command::Witness(a) => {
            let f = loader.hom_path(&a.hom)?;
            let deg = degree_path(f.source(), &a.degree)?;
            let w = destabilizing_witness(&f, &deg)?;
            let v = WitnessOut {
                lambda_prime: w.lambda_prime,
                weight: w.weight,
                parabolic_roots: roots(f.target(), &w.parabolic.parabolic_roots),
                levi_roots: roots(f.target(), &w.parabolic.levi_roots),
            };
            render(cli, &v, |v| {
                format!(
                    "lambda': {}\nweight: {}\nparabolic roots: {}\nlevi roots: {}\n",
                    v.lambda_prime,
                    v.weight,
                    list_text(&v.parabolic_roots),
                    list_text(&v.levi_roots)
                )
            })
        }
        Command::BundleSs(a) => {
            let v = match loader.bundle_path(&a.bundle)? {
                Bundle::Split { bundle, .. } => {
                    let closed = split_semistable(&bundle);
                    let brute = split_semistable_bruteforce(&bundle)?;
                    let adj = adjoint_semistable(&bundle);
                    if closed != brute || closed != adj {
                        return Err(Error::InvariantBroken(format!(
                            "semistability tests disagree: closed form {closed}, parabolic {brute}, adjoint {adj}"
                        )));
                    }
                    BundleSsOut {
                        kind: "split".into(),
                        semistable: closed,
                        closed_form: Some(closed),
                        parabolic_criterion: Some(brute),
                        adjoint: Some(adj),
                        adjoint_degrees: Some(adjoint_degrees(&bundle)),
                    }
                }
                Bundle::Levi(b) => BundleSsOut {
                    kind: "levi".into(),
                    semistable: levi_induced_semistable(&b)?,
                    closed_form: None,
                    parabolic_criterion: None,
                    adjoint: None,
                    adjoint_degrees: None,
                },
            };
            render(cli, &v, |v| {
                let mut s = format!("semistable: {}\n", v.semistable);
                if let Some(d) = &v.adjoint_degrees {
                    let _ = writeln!(s, "adjoint degrees: {}", join(d));
                }
                s
            })
        }
        Command::Destabilizer(a) => {
            let Bundle::Split { bundle, norm } = loader.bundle_path(&a.bundle)? else {
                return Err(Error::Parse(format!("{}: destabilizer needs a split bundle", a.bundle.display())));
            };
            let v = match canonical_destabilizer(&bundle, &norm)? {
                None => DestabilizerOut { semistable: true, lambda_star: None, translate: None, m_squared: None },
                Some(d) => DestabilizerOut {
                    semistable: false,
                    lambda_star: Some(d.lambda_star),
                    translate: Some(d.translate),
                    m_squared: Some(d.m_squared),
                },
            };
            render(cli, &v, |v| match (&v.lambda_star, &v.m_squared) {
                (Some(l), Some(m)) => format!("semistable: false\nlambda*: {l}\nM^2: {m}\n"),
                _ => "semistable: true\n".into(),
            })
        }
        Command::GitClassify(a) => {
            let act = loader.action_path(&a.action)?;
            let patterns = match &a.support {
                Some(s) => vec![s.clone()],
                None => all_patterns(act.len(), pattern_cap)?,
            };
            let v = patterns.into_iter().map(|s| classify(&act, s)).collect::<Result<Vec<_>>>()?;
            render(cli, &v, |v| {
                let mut s = String::new();
                for p in v {
                    let _ = writeln!(
                        s,
                        "{{{}}}: semistable {}, polystable {}, stable {}, label {}, M^2 {}",
                        join(p.support.indices()),
                        p.semistable,
                        p.polystable,
                        p.stable,
                        p.label,
                        p.m_squared
                    );
                }
                s
            })
        }
        Command::GitStrata(a) => {
            let act = loader.action_path(&a.action)?;
            let strata = strata_report(&act, pattern_cap, candidate_cap)?;
            match cli.format {
                Format::Json => Ok(json(&strata)),
                Format::Dot => Ok(strata_dot(&strata)),
                Format::Text => {
                    let mut s = String::new();
                    for st in &strata {
                        let sup: Vec<String> = st.supports.iter().map(|p| format!("{{{}}}", join(p.indices()))).collect();
                        let _ = writeln!(
                            s,
                            "beta {}: M^2 {}, centre {{{}}}, attractor {{{}}}, supports [{}]",
                            st.label,
                            st.m_squared,
                            join(&st.centre),
                            join(&st.attractor),
                            sup.join(", ")
                        );
                    }
                    Ok(s)
                }
            }
        }
        Command::GitVerify(a) => {
            let act = loader.action_path(&a.action)?;
            // stratify_supports reports partition and monotonicity failures as errors
            let (patterns, partition, monotone) = match stratify_supports_capped(&act, pattern_cap, candidate_cap) {
                Ok(m) => (m.len(), true, true),
                Err(Error::InvariantBroken(msg)) if msg.contains("monotonicity") => (0, true, false),
                Err(Error::InvariantBroken(_)) => (0, false, true),
                Err(e) => return Err(e),
            };
            let strata = candidate_betas_capped(&act, candidate_cap)?
                .into_iter()
                .map(|s| Ok(RecursionOut { recursion: verify_recursion_capped(&act, &s, pattern_cap)?, label: s.beta }))
                .collect::<Result<Vec<_>>>()?;
            let verified = partition && monotone && strata.iter().all(|s| s.recursion);
            let v = VerifyOut { patterns, partition, monotone, strata, verified };
            render(cli, &v, |v| {
                let mut s = format!("patterns: {}\npartition: {}\nmonotone: {}\n", v.patterns, v.partition, v.monotone);
                for r in &v.strata {
                    let _ = writeln!(s, "recursion {}: {}", r.label, r.recursion);
                }
                let _ = writeln!(s, "verified: {}", v.verified);
                s
            })
        }
    }
}

fn all_patterns(n: usize, cap: usize) -> Result<Vec<SupportPattern>> {
    if n >= 63 || (1u64 << n) - 1 > cap as u64 {
        return Err(Error::CapExceeded { what: "support patterns".into(), cap });
    }
    (1u64..1 << n).map(SupportPattern::from_mask).collect()
}

fn classify(act: &LinearizedAction, s: SupportPattern) -> Result<PatternOut> {
    let st = instability(act, &s)?;
    Ok(PatternOut {
        semistable: is_semistable(act, &s)?,
        polystable: is_polystable(act, &s)?,
        stable: is_stable(act, &s)?,
        hm_weight: hm_weight(act, &s, &st.lambda_beta)?,
        label: st.beta,
        m_squared: st.level,
        support: s,
    })
}

/// Every candidate stratum with the support patterns it contains.
pub fn strata_report(act: &LinearizedAction, pattern_cap: usize, candidate_cap: usize) -> Result<Vec<StratumOut>> {
    let map = stratify_supports_capped(act, pattern_cap, candidate_cap)?;
    Ok(candidate_betas_capped(act, candidate_cap)?
        .into_iter()
        .map(|s| {
            let supports = map.iter().filter(|(_, d)| d.beta == s.beta).map(|(p, _)| p.clone()).collect();
            stratum_out(act, s, supports)
        })
        .collect())
}

fn stratum_out(act: &LinearizedAction, s: StratumData, supports: Vec<SupportPattern>) -> StratumOut {
    let g = act.group();
    StratumOut {
        parabolic_roots: roots(g, &s.parabolic.parabolic_roots),
        levi_roots: roots(g, &s.parabolic.levi_roots),
        label: s.beta,
        m_squared: s.level,
        lambda_beta: s.lambda_beta,
        centre: s.centre_indices,
        attractor: s.attractor_indices,
        shifted_shift: s.shifted_shift,
        supports,
    }
}

/// Strata as nodes; an edge joins each stratum to every stratum on the next lower norm level.
fn strata_dot(strata: &[StratumOut]) -> String {
    let mut s = String::from("digraph strata {\n  rankdir=TB;\n");
    for (i, st) in strata.iter().enumerate() {
        let _ = writeln!(s, "  s{i} [label=\"beta = {}\\nM^2 = {}\\nsupports: {}\"];", st.label, st.m_squared, st.supports.len());
    }
    let mut levels: Vec<&Rational> = strata.iter().map(|st| &st.m_squared).collect();
    levels.dedup();
    for pair in levels.windows(2) {
        for (i, _) in strata.iter().enumerate().filter(|(_, a)| &a.m_squared == pair[0]) {
            for (j, _) in strata.iter().enumerate().filter(|(_, b)| &b.m_squared == pair[1]) {
                let _ = writeln!(s, "  s{i} -> s{j};");
            }
        }
    }
    s.push_str("}\n");
    s
}
