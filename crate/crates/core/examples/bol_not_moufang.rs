//! Lists the doubles that satisfy a Bol law but not the Moufang laws.

use chein_double::{analyze, build_double, build_group, search_bol_not_moufang};

fn main() -> chein_double::Result<()> {
    for spec in ["S3", "D8", "Q8"] {
        let g = build_group(&spec.parse()?)?;
        let found = search_bol_not_moufang(&g)?;
        println!("{spec}: {} Bol loops that are not Moufang", found.len());
        if let Some(m) = found.first() {
            let r = analyze(&build_double(g, *m));
            let side = match (r.is_left_bol, r.is_right_bol) {
                (true, true) => "both",
                (true, false) => "left",
                _ => "right",
            };
            let why = r
                .witnesses
                .get("is_moufang")
                .map(|w| format!("{w:?}"))
                .unwrap_or_default();
            println!("  e.g. {m}: {side} Bol, Moufang fails at {why}");
        }
    }
    Ok(())
}
