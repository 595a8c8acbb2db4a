#include <iostream>
int main() { std::cout << "badproj: placeholder\n"; return 0; }
