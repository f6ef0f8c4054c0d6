// The command line end to end in a scratch directory: generate G_2, build
// the outerplanar partition, validate it as an embedding with c = 1, then
// run the witness pipeline on G_14 and audit the certificate.

use std::error::Error;

use psw::cli::run;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let dir = tempfile::tempdir()?;
    let p = |f: &str| dir.path().join(f).display().to_string();
    let psw = |args: &[&str]| {
        let code = run(std::iter::once("psw").chain(args.iter().copied()));
        println!("psw {} -> exit {code}", args.join(" "));
        code
    };

    assert_eq!(psw(&["generate", "gh", "--height", "2", "-o", &p("g2.el")]), 0);
    assert_eq!(psw(&["construct", "outerplanar", "--height", "2", "-o", &p("parts.json"), "--host", &p("host.el")]), 0);
    let embed = ["validate", "embedding", "--graph", &p("g2.el"), "--partition", &p("parts.json")];
    assert_eq!(psw(&[&embed[..], &["--layering", &p("parts.layering.json"), "--c", "1"]].concat()), 0);
    assert_eq!(psw(&["check", "outerplanar", &p("host.el")]), 0);

    assert_eq!(psw(&["generate", "gh", "--height", "14", "-o", &p("g14.el")]), 0);
    let all: Vec<usize> = (0..(1 << 15) - 1).collect();
    std::fs::write(p("tp.json"), format!(r#"{{ "host": {{ "n": 1, "edges": [] }}, "parts": {{ "0": {all:?} }} }}"#))?;
    let depth: Vec<Vec<usize>> = (0..=14).map(|d| ((1 << d) - 1..(1 << (d + 1)) - 1).collect()).collect();
    std::fs::write(p("lay.json"), format!(r#"{{ "layers": {depth:?} }}"#))?;
    let w = ["witness", "--graph", &p("g14.el"), "--meta", &p("g14.json"), "--tree-partition", &p("tp.json")];
    assert_eq!(psw(&[&w[..], &["--layering", &p("lay.json"), "-o", &p("cert.json")]].concat()), 0);
    assert_eq!(psw(&["audit", &p("cert.json")]), 0);

    let text = std::fs::read_to_string(p("cert.json"))?;
    std::fs::write(p("cert.json"), text.replacen("\"cell\": 16384", "\"cell\": 16385", 1))?;
    assert_eq!(psw(&["audit", &p("cert.json")]), 1);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
