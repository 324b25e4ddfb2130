//! A seeded verification campaign driven from code rather than the CLI,
//! printed as the aligned table and as JSON lines.

use hypnorm::verify::{run_verify, write_jsonl, write_table, PartialVerifyConfig};

fn main() -> hypnorm::Result<()> {
    let cfg = PartialVerifyConfig {
        ineq: Some(vec!["haagerup,buchholz,main".into()]),
        group: Some("free:2".into()),
        k: Some("1..2".into()),
        trials: Some(3),
        seed: Some(17),
        ..Default::default()
    }
    .resolve()?;
    let out = run_verify(&cfg)?;
    let mut stdout = std::io::stdout();
    write_table(&mut stdout, &out.reports).expect("stdout");
    println!();
    write_jsonl(&mut stdout, &out.reports[..2]).expect("stdout");
    println!("exit code {}", out.exit_code);
    Ok(())
}
