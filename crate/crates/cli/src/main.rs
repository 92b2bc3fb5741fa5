use std::io::{self, Write};

fn main() {
    let out = structurable_cli::run(std::env::args_os(), &mut io::stdin().lock());
    io::stdout().write_all(out.stdout.as_bytes()).ok();
    io::stderr().write_all(out.stderr.as_bytes()).ok();
    std::process::exit(out.code);
}
