fn main() {
    parrondo::cli::reset_sigpipe();
    std::process::exit(parrondo::cli::run());
}
