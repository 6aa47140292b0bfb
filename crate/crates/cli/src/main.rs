use std::io;

fn main() {
    let code = receptron_cli::run_with_args(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock());
    std::process::exit(code);
}
