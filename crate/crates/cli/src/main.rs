fn main() {
    println!("pbc");
}
