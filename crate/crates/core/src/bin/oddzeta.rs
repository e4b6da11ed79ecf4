fn main() { std::process::exit(oddzeta::cli::main()) }
