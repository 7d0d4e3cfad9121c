"""Physical constants and reference conditions.

Spectroscopic unit conventions used throughout the package: wavenumbers in
cm^-1, line intensities in cm^-1/(molecule cm^-2), pressures in atm,
temperatures in K, cell lengths in cm, optical path differences in cm.
"""

# CODATA 2018 exact values
BOLTZMANN_J_PER_K = 1.380649e-23
SPEED_OF_LIGHT_M_PER_S = 2.99792458e8
PLANCK_J_S = 6.62607015e-34
AVOGADRO_PER_MOL = 6.02214076e23

ATM_PA = 101325.0

# Database reference conditions for tabulated line parameters
REFERENCE_TEMPERATURE_K = 296.0
REFERENCE_PRESSURE_ATM = 1.0

# Molar masses (g/mol) used for Doppler widths, keyed by species tag and by
# the database molecule id found in column 1-2 of fixed-width records.
MOLAR_MASS_G_PER_MOL = {
    "H2O": 18.010565,
    "CO2": 43.989830,
    "O3": 47.984745,
    "N2O": 44.001062,
    "CO": 27.994915,
    "CH4": 16.042500,
}

MOLAR_MASS_BY_MOLEC_ID = {
    1: MOLAR_MASS_G_PER_MOL["H2O"],
    2: MOLAR_MASS_G_PER_MOL["CO2"],
    3: MOLAR_MASS_G_PER_MOL["O3"],
    4: MOLAR_MASS_G_PER_MOL["N2O"],
    5: MOLAR_MASS_G_PER_MOL["CO"],
    6: MOLAR_MASS_G_PER_MOL["CH4"],
}


def total_number_density_cm3(temperature_k: float, pressure_atm: float) -> float:
    """Ideal-gas total number density p/(k_B T) in molecule/cm^3.

    At 296 K and 1 atm this evaluates to 2.479e19 cm^-3.
    """
    pressure_pa = pressure_atm * ATM_PA
    return pressure_pa / (BOLTZMANN_J_PER_K * temperature_k) * 1e-6


def photon_energy_j(wavenumber_cm1: float) -> float:
    """Energy h*c*nu of a photon with the given wavenumber."""
    return PLANCK_J_S * SPEED_OF_LIGHT_M_PER_S * wavenumber_cm1 * 100.0
