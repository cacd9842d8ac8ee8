fn main() {
    std::process::exit(dwshell_cli::run(std::env::args_os()));
}
