use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <math.h>
#include "qdist.h"

int main(void) {
    QdState *a = NULL, *b = NULL;
    QdLaw *law = NULL;
    double d = -1.0, pdf = -1.0;
    char msg[256];
    if (qd_state_sample_induced(8, 8, QD_FIELD_COMPLEX, 1, 0, &a) != QD_STATUS_OK) return 1;
    if (qd_state_sample_induced(8, 8, QD_FIELD_COMPLEX, 1, 1, &b) != QD_STATUS_OK) return 2;
    if (qd_distance(a, b, QD_METRIC_TRACE, &d) != QD_STATUS_OK) return 3;
    if (qd_law_new(QD_LAW_KIND_MARCHENKO_PASTUR, 0.0, &law) != QD_STATUS_INVALID_ARGUMENT) return 4;
    if (qd_last_error_message(msg, sizeof msg) != QD_STATUS_OK) return 5;
    if (qd_law_new(QD_LAW_KIND_MARCHENKO_PASTUR, 1.0, &law) != QD_STATUS_OK) return 6;
    qd_law_pdf(law, 2.0, &pdf);
    printf("%s|%.6f|%.6f|%s\n", qd_version(), d, pdf, msg);
    qd_state_free(a);
    qd_state_free(b);
    qd_law_free(law);
    return 0;
}
"#;

/// Compiles a C program against the generated header and the static library.
#[test]
fn header_compiles_and_links_from_c() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler, skipping");
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // integration tests live in target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libqdist_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());

    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let bin = dir.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(manifest.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());

    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    let line = String::from_utf8(out.stdout).unwrap();
    let fields: Vec<&str> = line.trim().split('|').collect();
    assert_eq!(fields[0], env!("CARGO_PKG_VERSION"));
    let d: f64 = fields[1].parse().unwrap();
    assert!(d > 0.0 && d < 1.0);
    assert_eq!(fields[2], "0.159155");
    assert!(fields[3].contains("must be positive"), "{}", fields[3]);
}
