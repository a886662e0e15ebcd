use clap::Parser;

use dedekind_padic::cli::{execute, Cli};

fn main() {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = execute(cli.command, &mut stdout.lock(), &mut stderr.lock());
    std::process::exit(code);
}
