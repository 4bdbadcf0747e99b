// Copyright 2026 The excitonfb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// output.hpp: CSV tables and SVG line plots of sweep results.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "excitonfb/experiments.hpp"

namespace excitonfb {

using Provenance = std::vector<std::pair<std::string, std::string>>;

// Header row with units, then one row per (grid point x channel). Doubles
// use 17 significant digits. Provenance lines are written as '# key = value'.
void write_csv(const SweepTable& table, const std::string& path, const Provenance& provenance = {});
std::string format_csv(const SweepTable& table, const Provenance& provenance = {});
SweepTable parse_csv(const std::string& text);
SweepTable read_csv(const std::string& path);

struct PlotSpec {
    std::string title;
    double width = 720.0;
    double height = 480.0;
    double margin_left = 90.0;
    double margin_right = 170.0;
    double margin_top = 40.0;
    double margin_bottom = 60.0;
    bool log_y = false;
};

// Linear map from data ranges onto the plot frame. With log_y the map
// applies to log10(y).
struct AxisMap {
    double x_min = 0.0;
    double x_max = 1.0;
    double y_min = 0.0;
    double y_max = 1.0;
    double left = 0.0;
    double right = 1.0;
    double top = 0.0;
    double bottom = 1.0;
    bool log_y = false;

    double px(double x) const;
    double py(double y) const;
};

// Data ranges are the exact min/max over plotted points.
AxisMap plot_axes(const SweepTable& table, const PlotSpec& spec);

std::string render_svg(const SweepTable& table, const PlotSpec& spec, const Provenance& provenance = {});
void write_svg_plot(const SweepTable& table, const std::string& path, const PlotSpec& spec,
                    const Provenance& provenance = {});

}  // namespace excitonfb
