//! Keeps the JSON group files under `groups/` in sync with the bundled
//! sample groups. Run with `REGEN_FIXTURES=1` to rewrite them.

use sharply::group::bundled_samples;
use std::fs;
use std::path::PathBuf;

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../groups")
        .join(format!("{name}.json"))
}

#[test]
fn group_fixture_files_match_bundled_samples() {
    for (name, group) in bundled_samples() {
        let path = fixture_path(name);
        let mut expected = serde_json::to_string_pretty(&group.to_doc()).unwrap();
        expected.push('\n');
        if std::env::var_os("REGEN_FIXTURES").is_some() {
            fs::write(&path, &expected).unwrap();
        }
        let actual = fs::read_to_string(&path).unwrap_or_else(|e| {
            panic!("{}: {e}; run with REGEN_FIXTURES=1 to create it", path.display())
        });
        assert_eq!(
            actual,
            expected,
            "{} is stale; run with REGEN_FIXTURES=1",
            path.display()
        );
    }
}
