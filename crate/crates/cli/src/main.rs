use std::fs;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use ialt_cli::{cmd_bounds, cmd_decode, cmd_info, cmd_simulate, BoundsArgs, DecodeArgs, InfoArgs, SimulateArgs};

#[derive(Parser)]
#[command(name = "ialt", version, about = "Interleaved alternant codes: bounds, simulation and decoding")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a table of success-probability bounds over a range of t.
    Bounds(BoundsArgs),
    /// Estimate decoding outcomes by Monte Carlo simulation.
    Simulate(SimulateArgs),
    /// Decode a received matrix read from a file.
    Decode(DecodeArgs),
    /// Print code dimension and decoding radius as JSON.
    Info(InfoArgs),
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Bounds(args) => {
            let table = cmd_bounds(&args)?;
            let path = args.out_path();
            fs::write(&path, table).with_context(|| format!("writing {}", path.display()))?;
            println!("{}", path.display());
        }
        Command::Simulate(args) => println!("{}", serde_json::to_string_pretty(&cmd_simulate(&args)?)?),
        Command::Decode(args) => {
            let input = fs::read_to_string(&args.input)
                .with_context(|| format!("reading {}", args.input.display()))?;
            print!("{}", cmd_decode(&args, &input)?);
        }
        Command::Info(args) => println!("{}", serde_json::to_string_pretty(&cmd_info(&args)?)?),
    }
    Ok(())
}
