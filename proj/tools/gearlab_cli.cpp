// Placeholder entry point; replaced by the full command-line driver.
int main() { return 1; }
