fn main() {
    println!("conjprod CLI placeholder");
}
