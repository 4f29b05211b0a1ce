#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "randnla/io.hpp"
#include "randnla/rng.hpp"

using namespace randnla;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) {
    path = (std::filesystem::temp_directory_path() / name).string();
  }
  ~TempFile() { std::remove(path.c_str()); }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("array Matrix Market round-trips bit exactly") {
  TempFile tmp("randnla_io_array.mtx");
  Rng rng = make_rng(1);
  const DenseMatrix a = gaussian_matrix(7, 5, rng);
  save_matrix(a, tmp.path, MatrixFormat::kMatrixMarket);
  const DenseMatrix back = load_matrix(tmp.path);
  CHECK(back.rows() == 7);
  CHECK(back.cols() == 5);
  CHECK((back.array() == a.array()).all());
}

TEST_CASE("identity round-trips through the array format") {
  TempFile tmp("randnla_io_eye.mtx");
  const DenseMatrix eye = DenseMatrix::Identity(2, 2);
  save_matrix(eye, tmp.path, MatrixFormat::kMatrixMarket);
  CHECK((load_matrix(tmp.path).array() == eye.array()).all());
}

TEST_CASE("coordinate files densify with the declared nonzeros") {
  TempFile tmp("randnla_io_coord.mtx");
  write_text(tmp.path,
             "%%MatrixMarket matrix coordinate real general\n"
             "% a comment line\n"
             "4 3 3\n"
             "1 1 2.5\n"
             "4 3 -1\n"
             "2 2 7e-1\n");
  const DenseMatrix m = load_matrix(tmp.path);
  CHECK(m.rows() == 4);
  CHECK(m.cols() == 3);
  CHECK((m.array() != 0.0).count() == 3);
  CHECK(m(0, 0) == 2.5);
  CHECK(m(3, 2) == -1.0);
  CHECK(m(1, 1) == 0.7);
}

TEST_CASE("CSV round-trips bit exactly") {
  TempFile tmp("randnla_io_data.csv");
  Rng rng = make_rng(2);
  const DenseMatrix a = gaussian_matrix(9, 4, rng);
  save_matrix(a, tmp.path, MatrixFormat::kCsv);
  const DenseMatrix back = load_matrix(tmp.path);
  CHECK((back.array() == a.array()).all());
}

TEST_CASE("parse errors carry the offending line number") {
  TempFile tmp("randnla_io_bad.mtx");
  write_text(tmp.path,
             "%%MatrixMarket matrix coordinate real general\n"
             "2 2 2\n"
             "1 1 1.0\n"
             "3 1 1.0\n");  // row index out of bounds on line 4
  try {
    load_matrix(tmp.path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(":4:") != std::string::npos);
  }

  TempFile csv("randnla_io_bad.csv");
  write_text(csv.path, "1,2\n3,nope\n");
  try {
    load_matrix(csv.path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);
  }
}

TEST_CASE("header and count mismatches are rejected") {
  TempFile tmp("randnla_io_mismatch.mtx");
  write_text(tmp.path,
             "%%MatrixMarket matrix coordinate real general\n"
             "2 2 3\n"
             "1 1 1.0\n");
  CHECK_THROWS_AS(load_matrix(tmp.path), ParseError);

  TempFile ragged("randnla_io_ragged.csv");
  write_text(ragged.path, "1,2,3\n4,5\n");
  CHECK_THROWS_AS(load_matrix(ragged.path), ParseError);
}

TEST_CASE("missing files raise ParseError") {
  CHECK_THROWS_AS(load_matrix("/nonexistent/file.mtx"), ParseError);
}

TEST_CASE("format inference from the extension") {
  CHECK(format_from_path("a.mtx") == MatrixFormat::kMatrixMarket);
  CHECK(format_from_path("a.MM") == MatrixFormat::kMatrixMarket);
  CHECK(format_from_path("a.csv") == MatrixFormat::kCsv);
  CHECK(format_from_path("noext") == MatrixFormat::kCsv);
}
