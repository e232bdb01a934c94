#pragma once

// Published per-industry results: accuracy, specificity, sensitivity,
// precision, G-mean, F-measure, AUC.

#include <array>

namespace fixture {

struct PublishedRow {
  const char* industry;
  const char* model;
  double accuracy, specificity, sensitivity, precision, g_mean, f_measure, auc;
};

inline constexpr std::array<PublishedRow, 56> kPublishedResults{{
    {"Agriculture", "LDA", 0.714, 0.500, 1.000, 0.600, 0.707, 0.750, 0.750},
    {"Agriculture", "QDA", 0.857, 0.750, 1.000, 0.750, 0.866, 0.857, 0.875},
    {"Agriculture", "LR", 0.714, 0.500, 1.000, 0.600, 0.707, 0.750, 0.750},
    {"Agriculture", "AB", 0.857, 0.750, 1.000, 0.750, 0.866, 0.857, 0.875},
    {"Agriculture", "DT", 0.571, 0.750, 0.333, 0.500, 0.500, 0.400, 0.542},
    {"Agriculture", "BT", 0.571, 0.750, 0.333, 0.500, 0.500, 0.400, 0.542},
    {"Agriculture", "RF", 0.714, 0.500, 1.000, 0.600, 0.707, 0.750, 0.750},
    {"Mining", "LDA", 0.656, 0.917, 0.500, 0.909, 0.677, 0.645, 0.708},
    {"Mining", "QDA", 0.812, 0.917, 0.750, 0.938, 0.829, 0.833, 0.833},
    {"Mining", "LR", 0.688, 0.917, 0.550, 0.917, 0.710, 0.687, 0.733},
    {"Mining", "AB", 0.625, 0.667, 0.600, 0.750, 0.632, 0.667, 0.633},
    {"Mining", "DT", 0.812, 0.833, 0.800, 0.889, 0.816, 0.842, 0.817},
    {"Mining", "BT", 0.750, 0.833, 0.700, 0.875, 0.764, 0.778, 0.767},
    {"Mining", "RF", 0.781, 1.000, 0.650, 1.000, 0.806, 0.788, 0.825},
    {"Manufacturing", "LDA", 0.530, 0.460, 0.594, 0.548, 0.522, 0.570, 0.527},
    {"Manufacturing", "QDA", 0.546, 0.109, 0.943, 0.539, 0.321, 0.686, 0.526},
    {"Manufacturing", "LR", 0.530, 0.425, 0.625, 0.545, 0.516, 0.583, 0.525},
    {"Manufacturing", "AB", 0.585, 0.557, 0.609, 0.603, 0.583, 0.606, 0.583},
    {"Manufacturing", "DT", 0.555, 0.259, 0.823, 0.551, 0.461, 0.660, 0.541},
    {"Manufacturing", "BT", 0.574, 0.621, 0.531, 0.607, 0.574, 0.567, 0.576},
    {"Manufacturing", "RF", 0.503, 0.460, 0.542, 0.525, 0.499, 0.533, 0.501},
    {"Transportation", "LDA", 0.562, 0.625, 0.500, 0.571, 0.559, 0.533, 0.562},
    {"Transportation", "QDA", 0.562, 0.969, 0.156, 0.833, 0.389, 0.263, 0.562},
    {"Transportation", "LR", 0.578, 0.594, 0.562, 0.581, 0.578, 0.571, 0.578},
    {"Transportation", "AB", 0.609, 0.719, 0.500, 0.640, 0.599, 0.561, 0.609},
    {"Transportation", "DT", 0.531, 0.625, 0.438, 0.538, 0.523, 0.483, 0.531},
    {"Transportation", "BT", 0.672, 0.719, 0.625, 0.690, 0.670, 0.656, 0.672},
    {"Transportation", "RF", 0.656, 0.562, 0.750, 0.632, 0.650, 0.686, 0.656},
    {"Trade", "LDA", 0.559, 0.521, 0.593, 0.582, 0.556, 0.587, 0.557},
    {"Trade", "QDA", 0.500, 0.042, 0.907, 0.516, 0.194, 0.658, 0.475},
    {"Trade", "LR", 0.549, 0.521, 0.574, 0.574, 0.547, 0.574, 0.547},
    {"Trade", "AB", 0.608, 0.542, 0.667, 0.621, 0.601, 0.643, 0.604},
    {"Trade", "DT", 0.637, 0.479, 0.778, 0.627, 0.610, 0.694, 0.628},
    {"Trade", "BT", 0.745, 0.771, 0.722, 0.780, 0.746, 0.750, 0.747},
    {"Trade", "RF", 0.637, 0.625, 0.648, 0.660, 0.636, 0.654, 0.637},
    {"Finance", "LDA", 0.570, 0.621, 0.526, 0.615, 0.572, 0.567, 0.574},
    {"Finance", "QDA", 0.592, 0.273, 0.868, 0.579, 0.487, 0.695, 0.571},
    {"Finance", "LR", 0.570, 0.591, 0.553, 0.609, 0.571, 0.579, 0.572},
    {"Finance", "AB", 0.648, 0.621, 0.671, 0.671, 0.646, 0.671, 0.646},
    {"Finance", "DT", 0.627, 0.561, 0.684, 0.642, 0.619, 0.662, 0.622},
    {"Finance", "BT", 0.655, 0.682, 0.632, 0.696, 0.656, 0.662, 0.657},
    {"Finance", "RF", 0.627, 0.652, 0.605, 0.667, 0.628, 0.634, 0.628},
    {"Services", "LDA", 0.587, 0.468, 0.698, 0.583, 0.572, 0.635, 0.583},
    {"Services", "QDA", 0.587, 0.229, 0.922, 0.560, 0.460, 0.697, 0.576},
    {"Services", "LR", 0.587, 0.495, 0.672, 0.586, 0.577, 0.627, 0.584},
    {"Services", "AB", 0.627, 0.550, 0.698, 0.623, 0.620, 0.659, 0.624},
    {"Services", "DT", 0.631, 0.615, 0.647, 0.641, 0.630, 0.644, 0.631},
    {"Services", "BT", 0.631, 0.550, 0.707, 0.626, 0.624, 0.664, 0.629},
    {"Services", "RF", 0.618, 0.477, 0.750, 0.604, 0.598, 0.669, 0.614},
    {"PublicAdmin", "LDA", 0.636, 0.400, 0.833, 0.625, 0.577, 0.714, 0.617},
    {"PublicAdmin", "QDA", 0.818, 0.900, 0.750, 0.900, 0.822, 0.818, 0.825},
    {"PublicAdmin", "LR", 0.727, 0.600, 0.833, 0.714, 0.707, 0.769, 0.717},
    {"PublicAdmin", "AB", 0.727, 0.700, 0.750, 0.750, 0.725, 0.750, 0.725},
    {"PublicAdmin", "DT", 0.773, 0.700, 0.833, 0.769, 0.764, 0.800, 0.767},
    {"PublicAdmin", "BT", 0.773, 0.700, 0.833, 0.769, 0.764, 0.800, 0.767},
    {"PublicAdmin", "RF", 0.864, 0.900, 0.833, 0.909, 0.866, 0.870, 0.867},
}};

}  // namespace fixture
