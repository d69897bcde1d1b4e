fn main() {
    println!("cli scaffolding in progress");
}
