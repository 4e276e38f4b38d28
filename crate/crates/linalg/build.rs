fn main() {
    // Debian/Ubuntu libopenblas ships the full LAPACK symbol set.
    println!("cargo:rustc-link-lib=dylib=openblas");
}
