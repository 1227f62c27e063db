fn main() {
    let code = fdc_cli::app::parse_and_run(std::env::args(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
