use clap::Parser;
use subthresh_toolkit::{emit, execute, Cli, Context};

fn main() {
    let cli = Cli::parse();
    let result = Context::new(cli.config.as_deref(), &cli.set, cli.seed)
        .and_then(|ctx| execute(&ctx, &cli.command))
        .and_then(|artifacts| emit(&artifacts, cli.out.as_deref()));
    if let Err(e) = result {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
