use std::io::Write;

fn main() {
    let (code, report) = relnum_cli::run_command(std::env::args_os());
    if report.command == "usage" {
        let text = report.error.as_deref().unwrap_or_default();
        if code == relnum_cli::EXIT_PASS {
            print!("{text}");
        } else {
            eprint!("{text}");
        }
    } else {
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(report.summary().as_bytes());
    }
    std::process::exit(code);
}
