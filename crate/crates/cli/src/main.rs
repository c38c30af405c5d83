fn main() {
    std::process::exit(lsphere_cli::main_with(std::env::args_os()));
}
