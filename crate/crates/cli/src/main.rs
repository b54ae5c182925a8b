fn main() {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let stdout = std::io::stdout();
    let code = rcft_cli::run(&argv, &mut stdout.lock());
    std::process::exit(code);
}
