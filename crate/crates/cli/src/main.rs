fn main() {
    match gauss_cli::run(std::env::args_os()) {
        Ok(outcome) => {
            println!("{}", outcome.output);
            std::process::exit(outcome.code);
        }
        Err(text) => print!("{text}"),
    }
}
