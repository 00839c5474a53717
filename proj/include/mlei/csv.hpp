#ifndef MLEI_CSV_HPP
#define MLEI_CSV_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "mlei/benchmarks.hpp"
#include "mlei/stats.hpp"

namespace mlei {

// Episode-record tables: header row mandatory, one row per episode.
// Columns: variant,replicate,episode,selected_prior,reward,best_so_far,distance
void write_rows(std::ostream& out, const std::vector<result_row>& rows);
std::vector<result_row> read_rows(std::istream& in);

// File variants write through a temp file and rename, so a failure never
// leaves a partial output behind.
void write_rows_file(const std::string& path, const std::vector<result_row>& rows);
std::vector<result_row> read_rows_file(const std::string& path);

// Summary tables: variant,episode,count,median,q1,q3,min,max
void write_summary(std::ostream& out, const std::vector<summary_row>& rows);
void write_summary_file(const std::string& path, const std::vector<summary_row>& rows);

} // namespace mlei

#endif
