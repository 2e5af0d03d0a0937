#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include "qimet/correspondence.hpp"

namespace qimet::io {

/// Reads a space file. JSON ({"labels": [...], "matrix": [[...]]}) is
/// detected by a leading '{'; anything else is parsed as a headerless CSV
/// square matrix with labels auto-generated as p0, p1, ...
FiniteMetricSpace read_space(const std::filesystem::path& path,
                             double tol = kValidationTol);
FiniteMetricSpace read_space_json(std::istream& in, double tol = kValidationTol);
FiniteMetricSpace read_space_csv(std::istream& in, double tol = kValidationTol);

std::string space_to_json(const FiniteMetricSpace& s);
void write_space(const FiniteMetricSpace& s, const std::filesystem::path& path);

/// Correspondence files: {"nX": int, "nY": int, "pairs": [[i,j], ...]}.
Correspondence read_correspondence(const std::filesystem::path& path);
Correspondence read_correspondence_json(std::istream& in);
std::string correspondence_to_json(const Correspondence& R);
void write_correspondence(const Correspondence& R, const std::filesystem::path& path);

}  // namespace qimet::io
