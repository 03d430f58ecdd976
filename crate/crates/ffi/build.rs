use std::path::PathBuf;

fn main() {
    let dir =
        PathBuf::from(std::env::var("CARGO_MANIFEST_DIR").expect("cargo sets the manifest dir"));
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    let config =
        cbindgen::Config::from_file(dir.join("cbindgen.toml")).expect("cbindgen.toml is valid");
    let bindings =
        cbindgen::generate_with_config(&dir, config).expect("header generation succeeds");
    // write_to_file leaves the file untouched when the contents are unchanged
    bindings.write_to_file(dir.join("include/picgroup.h"));
}
