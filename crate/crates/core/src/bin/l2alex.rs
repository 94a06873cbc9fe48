fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(l2alex::cli::main_with(&argv));
}
