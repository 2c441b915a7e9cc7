mod design;
mod dump;
mod eval;
mod gen;
mod sweep;
mod train;

use radlab_core::Result;

use crate::Command;

pub use design::cmd_design;
pub use dump::cmd_dump;
pub use eval::cmd_eval;
pub use gen::cmd_gen;
pub use sweep::cmd_sweep;
pub use train::cmd_train;

pub enum Outcome {
    Ok,
    ComparisonFailed,
}

pub fn run(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Gen { config, out, seed } => {
            cmd_gen(&config, &out, seed)?;
            Ok(Outcome::Ok)
        }
        Command::Train {
            config,
            data,
            out,
            seed,
        } => {
            cmd_train(&config, &data, &out, seed)?;
            Ok(Outcome::Ok)
        }
        Command::Design {
            kind,
            d,
            delta,
            alpha,
            tau,
            k,
            out,
        } => {
            cmd_design(&kind, d, delta, alpha, tau, k, &out)?;
            Ok(Outcome::Ok)
        }
        Command::Eval { net, data, out } => {
            cmd_eval(&net, &data, &out)?;
            Ok(Outcome::Ok)
        }
        Command::Dump { net, data, n, out } => {
            cmd_dump(&net, &data, n, &out)?;
            Ok(Outcome::Ok)
        }
        Command::Sweep {
            net,
            mode,
            f,
            b,
            r,
            delta,
            polarity,
            out,
        } => {
            cmd_sweep(&net, &mode, f, b, r, delta, &polarity, &out)?;
            Ok(Outcome::Ok)
        }
        Command::Repro { table, out, strict } => {
            let all_pass = crate::repro::cmd_repro(&table, &out)?;
            if strict && !all_pass {
                Ok(Outcome::ComparisonFailed)
            } else {
                Ok(Outcome::Ok)
            }
        }
    }
}
