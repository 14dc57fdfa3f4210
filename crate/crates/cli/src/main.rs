use std::io::{self, IsTerminal};
use std::process::ExitCode;

use threebox_cli::{run, Io};

fn main() -> ExitCode {
    let stdin = io::stdin();
    let interactive = stdin.is_terminal();
    let code = run(
        std::env::args_os(),
        Io {
            input: &mut stdin.lock(),
            interactive,
            out: &mut io::stdout().lock(),
            err: &mut io::stderr().lock(),
        },
    );
    ExitCode::from(code as u8)
}
