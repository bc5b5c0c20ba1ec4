use std::io::Write;

fn main() {
    let result = binpart::cli::run(std::env::args_os());
    let _ = std::io::stdout().write_all(result.document.as_bytes());
    let _ = std::io::stderr().write_all(result.diagnostics.as_bytes());
    std::process::exit(result.code as i32);
}
