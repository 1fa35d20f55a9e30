use std::path::PathBuf;
use std::process::Command;

// Runs python/smoke_test.py against the cdylib cargo built for this test run.
#[test]
fn python_smoke_test() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|deps| deps.parent()).unwrap();
    let lib = profile_dir.join(if cfg!(target_os = "macos") { "libpetrie.dylib" } else { "libpetrie.so" });
    if cfg!(windows) || !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let script: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "python", "smoke_test.py"].iter().collect();
    let out = match Command::new("python3").arg(&script).env("PETRIE_PYTHON_LIB", &lib).output() {
        Ok(o) => o,
        Err(e) => {
            eprintln!("skipping: python3 unavailable ({e})");
            return;
        }
    };
    assert!(
        out.status.success(),
        "stdout:\n{}\nstderr:\n{}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
}
