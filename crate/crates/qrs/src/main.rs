fn main() { std::process::exit(qrs::cli::main_entry()) }
