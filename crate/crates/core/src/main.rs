fn main() {
    let (code, text) = spectrep::cli::main_with_args(std::env::args_os());
    if code == 0 {
        print!("{}", text);
    } else if code == 3 && !text.trim_start().starts_with('{') {
        eprint!("{}", text);
    } else {
        print!("{}", text);
        if let Ok(v) = serde_json::from_str::<serde_json::Value>(&text) {
            if let Some(m) = v.get("message").and_then(|m| m.as_str()) {
                eprintln!("error: {}", m);
            }
        }
    }
    std::process::exit(code);
}
