#include <filesystem>

#include "doctest.h"
#include "hypertree/complex_io.hpp"
#include "hypertree/errors.hpp"
#include "hypertree/homology.hpp"

using namespace hypertree;

TEST_CASE("text round trip") {
  auto rp2 = projective_plane6();
  auto text = format_complex(rp2);
  CHECK(text.rfind("n=6\n", 0) == 0);
  CHECK(parse_complex(text) == rp2);
  auto js = format_complex(rp2, ComplexFormat::Json);
  CHECK(parse_complex(js) == rp2);
}

TEST_CASE("comments and whitespace") {
  auto c = parse_complex("# plane\n\nn=6\n1 2 3  # first\n\t2 3 4\n");
  CHECK(c.size() == 2);
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](const std::string& s) -> std::size_t {
    try {
      parse_complex(s);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("1 2 3\n") == 1);
  CHECK(line_of("n=5\n1 2 3\n1 2 9\n") == 3);
  CHECK(line_of("n=5\n1 2 3\n3 2 1\n") == 3);
  CHECK(line_of("n=5\n1 1 3\n") == 2);
  CHECK(line_of("n=5\n1 2\n") == 2);
  CHECK(line_of("n=5\n1 2 x\n") == 2);
  CHECK(line_of("") == 1);
  CHECK(line_of("{\"n\": 5, \"faces\": [[1,2]]}") == 1);
}

TEST_CASE("files") {
  auto path = std::filesystem::temp_directory_path() / "hypertree-io-test.cplx";
  write_complex(projective_plane6(), path);
  auto c = read_complex(path);
  CHECK(h1(c).torsion.to_string() == "Z/2");
  std::filesystem::remove(path);
  CHECK_THROWS(read_complex(path));
}
