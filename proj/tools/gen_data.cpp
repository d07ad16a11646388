// Writes data/o23.gram and data/MANIFEST.sha256.
#include <fstream>
#include <iostream>

#include "latd/catalog.hpp"

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : latd::data_dir();
  try {
    const latd::Lattice o23 = latd::o23_from_leech();
    const std::string text = latd::format_gram(o23);
    std::ofstream(dir + "/o23.gram", std::ios::binary) << text;
    std::ofstream(dir + "/MANIFEST.sha256", std::ios::binary) << latd::sha256_hex(text) << "  o23.gram\n";
    std::cout << "wrote " << dir << "/o23.gram\n";
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
