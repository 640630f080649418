use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use separatrix_core::cli::{exit_code, parse_input, render, run_command, Command, Emit, GraphKind};
use separatrix_core::Error;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    Resolve,
    Indices,
    Separatrix,
    Ramify,
    CurveCheck,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EmitArg {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GraphArg {
    Centers,
    Dual,
}

/// Blow-up resolution, Camacho–Sad indices, separatrices and ramifications
/// of plane foliation and curve germs.
#[derive(Debug, Parser)]
#[command(name = "separatrix", version)]
struct Args {
    command: Cmd,
    /// Input document; `-` or omitted reads stdin.
    input: Option<PathBuf>,
    /// Truncation order N of series (x^N).
    #[arg(long)]
    order: Option<u32>,
    /// Largest ramification exponent tried.
    #[arg(long)]
    dmax: Option<u32>,
    /// Depth guard for blow-up sequences.
    #[arg(long)]
    max_depth: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    emit: EmitArg,
    /// Graph drawn by `--emit dot`.
    #[arg(long, value_enum, default_value = "centers")]
    graph: GraphArg,
}

fn read_input(path: &Option<PathBuf>) -> Result<String, String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display())),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = Args::parse();
    let text = match read_input(&args.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let run = || -> Result<String, Error> {
        let mut doc = parse_input(&text)?;
        if let Some(o) = args.order {
            doc.options.order = o;
        }
        if let Some(d) = args.dmax {
            doc.options.d_max = d;
        }
        if let Some(k) = args.max_depth {
            doc.options.max_depth = k;
        }
        let cmd = match args.command {
            Cmd::Resolve => Command::Resolve,
            Cmd::Indices => Command::Indices,
            Cmd::Separatrix => Command::Separatrix,
            Cmd::Ramify => Command::Ramify,
            Cmd::CurveCheck => Command::CurveCheck,
        };
        let emit = match args.emit {
            EmitArg::Text => Emit::Text,
            EmitArg::Json => Emit::Json,
            EmitArg::Dot => Emit::Dot,
        };
        let graph = match args.graph {
            GraphArg::Centers => GraphKind::Centers,
            GraphArg::Dual => GraphKind::Dual,
        };
        Ok(render(&run_command(&doc, cmd)?, emit, graph))
    };
    match run() {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
