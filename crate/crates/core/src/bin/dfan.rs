use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use dfan::cli::{exit_code, run_text, Flags, Verb};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerbArg {
    Div,
    Sb,
    Reduce,
    Gensb,
    Fan,
    Compfan,
    Certify,
    OracleFan,
    Specialize,
}

impl From<VerbArg> for Verb {
    fn from(v: VerbArg) -> Self {
        match v {
            VerbArg::Div => Verb::Div,
            VerbArg::Sb => Verb::Sb,
            VerbArg::Reduce => Verb::Reduce,
            VerbArg::Gensb => Verb::Gensb,
            VerbArg::Fan => Verb::Fan,
            VerbArg::Compfan => Verb::Compfan,
            VerbArg::Certify => Verb::Certify,
            VerbArg::OracleFan => Verb::OracleFan,
            VerbArg::Specialize => Verb::Specialize,
        }
    }
}

/// Standard bases and Gröbner fans of ideals of differential operators.
#[derive(Debug, Parser)]
#[command(name = "dfan", version)]
struct Args {
    verb: VerbArg,
    /// Problem file (`-` reads standard input).
    file: PathBuf,
    /// Truncation cap in x-degree, overriding the file.
    #[arg(long)]
    cap: Option<u32>,
    /// Extra working precision above the cap.
    #[arg(long)]
    guard: Option<u32>,
    /// Sample count for `oracle-fan` and `certify`.
    #[arg(long)]
    samples: Option<usize>,
    /// Cell budget for fan traversal.
    #[arg(long)]
    max_cells: Option<usize>,
    /// Recursion depth for `compfan`.
    #[arg(long)]
    max_depth: Option<usize>,
    /// Seed weight as `u1,..,un,v1,..,vn`.
    #[arg(long, allow_hyphen_values = true)]
    seed_weight: Option<String>,
    /// Parameter values, e.g. `y=1` or `y1=2,y2=-1/3`.
    #[arg(long, allow_hyphen_values = true)]
    at: Option<String>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(j) = args.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("dfan: {}", e);
            return ExitCode::from(2);
        }
    }
    let text = if args.file.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(&args.file)
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("dfan: {}: {}", args.file.display(), e);
            return ExitCode::from(2);
        }
    };
    let flags = Flags {
        cap: args.cap,
        guard: args.guard,
        samples: args.samples,
        max_cells: args.max_cells,
        max_depth: args.max_depth,
        seed_weight: args.seed_weight,
        at: args.at,
    };
    let verb = Verb::from(args.verb);
    match run_text(verb, &text, &flags) {
        Ok(doc) => {
            // a closed pipe downstream is not an error
            let _ = writeln!(std::io::stdout().lock(), "{}", doc);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("dfan {}: {}", verb.name(), e);
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
