fn main() {
    std::process::exit(redumis::cli::main_with_args(std::env::args_os()));
}
