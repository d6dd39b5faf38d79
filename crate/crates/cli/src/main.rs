use std::process::ExitCode;

fn main() -> ExitCode {
    let threads = std::env::var("GYSIN_THREADS").ok();
    let code = gysin_cli::main_with(
        std::env::args_os(),
        threads.as_deref(),
        &mut std::io::stdin().lock(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    ExitCode::from(code)
}
