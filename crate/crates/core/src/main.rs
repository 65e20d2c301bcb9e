use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sliceobs::alexmod::{blanchfield_gram, build_module};
use sliceobs::cover::cover_presentation;
use sliceobs::error::Error;
use sliceobs::family::{family_expected, family_seifert, obstruction_report, FamilyParams};
use sliceobs::laurent::Rat;
use sliceobs::linkform::{double_cover_deck, double_cover_linking_form, linking_metabolisers};
use sliceobs::render::{self, Format};
use sliceobs::seifert::{alexander_polynomial, classical_invariants, SeifertMatrix};

/// Exact abelian slice obstructions from Seifert matrices.
#[derive(Parser)]
#[command(name = "sliceobs", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Machine,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Machine => Format::Machine,
        }
    }
}

/// Seifert matrix source: a JSON file or the family parameter m.
#[derive(Args)]
struct InputArgs {
    /// Path to a Seifert matrix file {"name": ..., "matrix": [[..]]}
    input: Option<PathBuf>,

    /// Use the family matrix [[0, m+1], [m, 0]] instead of a file
    #[arg(long)]
    m: Option<i64>,

    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the Alexander polynomial det(tV - V^T), normalised
    Alex(InputArgs),
    /// Print the knot determinant and signature
    Invariants(InputArgs),
    /// Print the rational Alexander module decomposition
    Module(InputArgs),
    /// Print the Blanchfield pairing on the presentation generators
    Blanchfield(InputArgs),
    /// List Blanchfield metabolisers, or locate the one containing --element
    Metab {
        #[command(flatten)]
        input: InputArgs,
        /// alpha1, alpha2, or a comma-separated rational coordinate vector
        #[arg(long, allow_hyphen_values = true)]
        element: Option<String>,
    },
    /// Branched-cover homology, generator lifts and deck data per --r
    Cover {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<usize>,
    },
    /// The double-cover linking form and its metabolisers
    Linkform(InputArgs),
    /// Closed-form family expectations for K_m
    Family {
        #[arg(long)]
        m: i64,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        r: Vec<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// The end-to-end obstruction report for K_m
    Report {
        #[arg(long)]
        m: i64,
        #[arg(long, value_delimiter = ',', required = true)]
        r: Vec<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
}

struct Failure {
    message: String,
    code: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure {
            message: e.to_string(),
            code: if e.is_unsupported() { 2 } else { 1 },
        }
    }
}

fn fail(message: impl Into<String>, code: u8) -> Failure {
    Failure {
        message: message.into(),
        code,
    }
}

fn load_matrix(args: &InputArgs) -> Result<SeifertMatrix, Failure> {
    match (&args.input, args.m) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| fail(format!("cannot read {}: {e}", path.display()), 1))?;
            Ok(SeifertMatrix::from_json(&text)?)
        }
        (None, Some(m)) => Ok(family_seifert(m)?),
        _ => Err(fail(
            "provide exactly one input: a matrix file or --m",
            1,
        )),
    }
}

fn parse_element(
    spec: &str,
    module: &sliceobs::alexmod::RationalAlexanderModule,
) -> Result<Vec<Rat>, Failure> {
    match spec {
        "alpha1" | "alpha2" => {
            let idx = if spec == "alpha1" { 0 } else { 1 };
            module
                .primary
                .components
                .get(idx)
                .map(|c| c.generator.clone())
                .ok_or_else(|| fail(format!("module has no component for {spec}"), 1))
        }
        _ => {
            let coords: Result<Vec<Rat>, _> = spec
                .split(',')
                .map(|s| s.trim().parse::<Rat>())
                .collect();
            let coords =
                coords.map_err(|e| fail(format!("cannot parse element coordinates: {e}"), 1))?;
            if coords.len() != module.q_dimension {
                return Err(fail(
                    format!(
                        "element has {} coordinates, module dimension is {}",
                        coords.len(),
                        module.q_dimension
                    ),
                    1,
                ));
            }
            Ok(coords)
        }
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.cmd {
        Cmd::Alex(args) => {
            let v = load_matrix(args)?;
            Ok(render::render_alex(
                &alexander_polynomial(&v),
                args.format.into(),
            ))
        }
        Cmd::Invariants(args) => {
            let v = load_matrix(args)?;
            Ok(render::render_invariants(
                &classical_invariants(&v),
                args.format.into(),
            ))
        }
        Cmd::Module(args) => {
            let v = load_matrix(args)?;
            Ok(render::render_module(&build_module(&v), args.format.into()))
        }
        Cmd::Blanchfield(args) => {
            let v = load_matrix(args)?;
            Ok(render::render_blanchfield(
                &blanchfield_gram(&v)?,
                args.format.into(),
            ))
        }
        Cmd::Metab { input, element } => {
            let v = load_matrix(input)?;
            let module = build_module(&v);
            let pairing = blanchfield_gram(&v)?;
            match element {
                None => {
                    let mets = module.metabolisers(&pairing)?;
                    Ok(render::render_metabolisers(&mets, input.format.into()))
                }
                Some(spec) => {
                    let x = parse_element(spec, &module)?;
                    match module.unique_metaboliser_containing(&pairing, &x) {
                        Ok(p) => Ok(render::render_unique_metaboliser(&p, input.format.into())),
                        Err(Error::NoMetaboliserContains) => {
                            Ok("no metaboliser contains the given element".into())
                        }
                        Err(Error::MetaboliserNotUnique) => {
                            Ok("several metabolisers contain the given element".into())
                        }
                        Err(e) => Err(e.into()),
                    }
                }
            }
        }
        Cmd::Cover { input, r } => {
            let v = load_matrix(input)?;
            let mut covers = Vec::new();
            for &ri in r {
                let cover = cover_presentation(&v, ri)?;
                if !cover.is_finite() {
                    return Err(fail(
                        format!(
                            "cover r = {ri}: infinite homology: unsupported for metaboliser analysis"
                        ),
                        2,
                    ));
                }
                covers.push((ri, cover));
            }
            Ok(render::render_cover(&covers, input.format.into()))
        }
        Cmd::Linkform(args) => {
            let v = load_matrix(args)?;
            let form = double_cover_linking_form(&v)?;
            let deck = double_cover_deck(&form);
            let mets = linking_metabolisers(&form, Some(&deck))?;
            Ok(render::render_linkform(&form, &mets, args.format.into()))
        }
        Cmd::Family { m, r, format } => {
            let params = FamilyParams::new(*m)?;
            let expectations: Vec<_> = r
                .iter()
                .map(|&ri| (ri, family_expected(params.m, ri)))
                .collect();
            Ok(render::render_family(params.m, &expectations, (*format).into()))
        }
        Cmd::Report { m, r, format } => {
            let report = obstruction_report(*m, r)?;
            let rendered = render::render_report(&report, (*format).into());
            if let Some(step) = report.first_failure() {
                return Err(fail(
                    format!("{rendered}\nreport step failed: {}", step.name),
                    3,
                ));
            }
            Ok(rendered)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("{}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
