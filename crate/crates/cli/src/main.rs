fn main() {
    std::process::exit(cospan_cli::app::main_entry());
}
