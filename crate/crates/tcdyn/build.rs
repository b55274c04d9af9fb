// Links the system LAPACK/BLAS (Debian: liblapack-dev). ndarray-linalg is
// used without a bundled backend so no Fortran toolchain is required.
fn main() {
    println!("cargo:rustc-link-lib=dylib=lapack");
    println!("cargo:rustc-link-lib=dylib=blas");
}
