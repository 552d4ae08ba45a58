// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The nfbeam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nfbeam/channel.hpp"

#include "nfbeam/csv.hpp"

namespace nfbeam {

void write_channel_csv(std::ostream& out, const ChannelMatrix<double>& g) {
  CsvWriter csv(out);
  csv.header({"row", "col", "re", "im"});
  for (Eigen::Index j = 0; j < g.rows(); ++j)
    for (Eigen::Index i = 0; i < g.cols(); ++i)
      csv.row({format_number(static_cast<long long>(j)),
               format_number(static_cast<long long>(i)),
               format_number(g(j, i).real()), format_number(g(j, i).imag())});
}

}  // namespace nfbeam
