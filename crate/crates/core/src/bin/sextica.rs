fn main() {
    println!("sextica");
}
