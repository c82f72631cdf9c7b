fn main() {
    std::process::exit(engage_gan::cli::dispatch(std::env::args_os()));
}
