use clap::Parser;
use radlab_cli::{commands, Cli, EXIT_COMPARISON, EXIT_OK, EXIT_USAGE};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help/version requests are not usage errors.
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match commands::run(cli.command) {
        Ok(commands::Outcome::Ok) => std::process::exit(EXIT_OK),
        Ok(commands::Outcome::ComparisonFailed) => std::process::exit(EXIT_COMPARISON),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(radlab_cli::exit_code_for(&e));
        }
    }
}
