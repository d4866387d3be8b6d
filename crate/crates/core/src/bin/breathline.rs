fn main() {
    breathline::cli::init_logging();
    std::process::exit(breathline::cli::main_with_args(std::env::args_os()));
}
