use std::path::Path;
use std::process::Command;

const EXPORTS: [&str; 10] = [
    "selberg_status_name",
    "selberg_last_error",
    "selberg_channel_new",
    "selberg_channel_free",
    "selberg_params_new",
    "selberg_params_free",
    "selberg_generalized",
    "selberg_monomial_exponent",
    "selberg_contour_beta",
    "selberg_classical",
];

fn header() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/selberg.h")
}

#[test]
fn header_declares_every_export() {
    let text = std::fs::read_to_string(header()).unwrap();
    for name in EXPORTS {
        assert!(
            text.contains(&format!("{name}(")),
            "{name} missing from header"
        );
    }
    assert!(text.contains("typedef struct SelbergChannel SelbergChannel;"));
    assert!(text.contains("SELBERG_STATUS_OK = 0"));
}

#[test]
fn header_compiles_as_c_and_cpp() {
    let Some(cc) = which("cc") else {
        eprintln!("no C compiler on PATH; header compile check not run");
        return;
    };
    let dir = std::env::temp_dir().join(format!("selberg-header-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("use.c");
    std::fs::write(
        &src,
        "#include \"selberg.h\"\n\
         int main(void) { SelbergComplex v; return (int)selberg_classical(1.0, 1.0, 1.0, 2, &v); }\n",
    )
    .unwrap();
    let include = header().parent().unwrap().to_path_buf();
    for lang in ["c", "c++"] {
        let out = Command::new(&cc)
            .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang, "-I"])
            .arg(&include)
            .arg(&src)
            .output()
            .unwrap();
        assert!(
            out.status.success(),
            "{lang}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

fn which(tool: &str) -> Option<std::path::PathBuf> {
    std::env::var_os("PATH").and_then(|paths| {
        std::env::split_paths(&paths)
            .map(|p| p.join(tool))
            .find(|p| p.is_file())
    })
}
