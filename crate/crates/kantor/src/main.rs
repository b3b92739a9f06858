//! Thin CLI over the library: check / structure / build-u / subalg /
//! embed / envelope. Exit status: 0 = PASS/computed, 1 = property FAIL
//! (with witness), 2 = input error.

use clap::{Parser, Subcommand};
use kantor::io::read_algebra;
use kantor::report::{
    cmd_build_u, cmd_check, cmd_embed, cmd_envelope, cmd_structure, cmd_subalg, emit_algebra,
    CheckKind, Report, SubalgKind,
};

#[derive(Parser)]
#[command(name = "kantor", about = "Conservative superalgebra toolkit over exact rationals")]
struct Cli {
    /// Emit the stable line-oriented machine format instead of human text
    #[arg(long, global = true)]
    machine: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a property of an algebra (witness emitted on failure)
    Check {
        /// conservative | terminal | flexible | rigid | jordan | ncjordan
        what: String,
        /// Algebra file path, "-" for stdin, or a catalog name
        #[arg(long)]
        algebra: String,
        /// Optional associated-product file (its product is used as *)
        #[arg(long)]
        assoc: Option<String>,
    },
    /// Jacobi subspace, annihilator, ideals, quasiunities, U0/U1 spans
    Structure {
        #[arg(long)]
        algebra: String,
    },
    /// Build the universal conservative superalgebra U(n,m)
    BuildU {
        n: usize,
        m: usize,
        /// Write the algebra file here ("-" or absent: stdout)
        #[arg(long)]
        out: Option<String>,
        /// Also re-verify Theorem 2 on the built algebra (slow for (2,1))
        #[arg(long)]
        deep: bool,
    },
    /// Build a terminal subalgebra W, S, or H of U(n,m)
    Subalg {
        n: usize,
        m: usize,
        /// W | S | H
        which: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Verify the adjoint embedding theorem on an algebra
    Embed {
        #[arg(long)]
        algebra: String,
        /// Seed for the associated-product perturbation check
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Grassmann envelope dimensions and identity-transfer report
    Envelope {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        assoc: Option<String>,
        /// Number of Grassmann generators (at least 4 for the transfer)
        #[arg(long, default_value_t = 4)]
        generators: usize,
    },
}

fn with_assoc(algebra: &str, assoc: Option<&str>) -> kantor::Result<kantor::io::AlgebraFile> {
    let mut file = read_algebra(algebra)?;
    if let Some(path) = assoc {
        file.assoc = Some(read_algebra(path)?.product);
    }
    Ok(file)
}

fn run(cli: &Cli) -> kantor::Result<Report> {
    match &cli.command {
        Command::Check { what, algebra, assoc } => {
            let kind: CheckKind = what.parse()?;
            cmd_check(&with_assoc(algebra, assoc.as_deref())?, kind)
        }
        Command::Structure { algebra } => cmd_structure(&read_algebra(algebra)?),
        Command::BuildU { n, m, out, deep } => {
            let (mut rep, file) = cmd_build_u(*n, *m, *deep)?;
            if let Some(text) = emit_algebra(&file, out.as_deref())? {
                rep.fields.push(("file".into(), format!("\n{text}")));
            }
            Ok(rep)
        }
        Command::Subalg { n, m, which, out } => {
            let kind: SubalgKind = which.parse()?;
            let (mut rep, file) = cmd_subalg(*n, *m, kind)?;
            if let Some(text) = emit_algebra(&file, out.as_deref())? {
                rep.fields.push(("file".into(), format!("\n{text}")));
            }
            Ok(rep)
        }
        Command::Embed { algebra, seed } => cmd_embed(&read_algebra(algebra)?, *seed),
        Command::Envelope { algebra, assoc, generators } => {
            cmd_envelope(&with_assoc(algebra, assoc.as_deref())?, *generators)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(rep) => {
            if cli.machine {
                print!("{}", rep.render_machine());
            } else {
                print!("{}", rep.render_human());
            }
            std::process::exit(rep.exit_code());
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
