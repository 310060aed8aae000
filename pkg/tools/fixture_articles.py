"""Hand-written fixture articles for the offline corpus.

Each entry carries the ground truth used by the manifest: the publication
date (or None), which cascade rule should find it, and the toponyms a
careful human reader would mark in the body and title.
"""

ARTICLES = [
    # ------------------------------------------------------------------ alz
    dict(
        id="alz-facts-2022", source="alz", date="2022-06-07", method="meta",
        url="https://www.alz.org/news/facts-and-figures-report-2022",
        title="Annual report counts more than six million Americans living with Alzheimer's",
        places=[("United States", "United States", "US"), ("Chicago", "Chicago", "US")],
        paragraphs=[
            "More than six million people in the United States are living with Alzheimer's disease, according to the annual facts and figures report released by the Alzheimer's Association.",
            "The report estimates that unpaid caregivers provided billions of hours of care in the past year. Family members often reduce working hours or leave jobs to support a relative with dementia.",
            "The association, which is based in Chicago, said the number of people aged 65 and older with Alzheimer's dementia is projected to grow sharply by 2050 unless treatments that prevent or slow the disease are found.",
            "A special section of the report looks at the dementia care workforce. Many primary care physicians said they feel unprepared to diagnose dementia and that the health system lacks specialists such as geriatricians.",
            "The authors call for more training for care workers, better payment for dementia care and wider use of early diagnosis so that families can plan ahead.",
        ],
    ),
    dict(
        id="alz-aaic-2022", source="alz", date="2022-08-02", method="meta",
        url="https://www.alz.org/news/aaic-2022-highlights",
        title="Highlights from the international conference on Alzheimer's research",
        places=[("San Diego", "San Diego", "US"), ("Toronto", "Toronto", "CA"),
                ("Tokyo", "Tokyo", "JP"), ("New York", "New York City", "US")],
        paragraphs=[
            "Thousands of scientists gathered in San Diego this week for the largest annual meeting on dementia research, with sessions on blood biomarkers, clinical trials and risk reduction.",
            "A team from Toronto presented data suggesting that ultra-processed food in the diet was linked to faster cognitive decline in middle-aged adults over about eight years.",
            "Researchers from Tokyo described a blood test for amyloid that matched brain scans in most participants. Blood tests could make diagnosis cheaper and faster than spinal fluid tests or PET imaging.",
            "Other studies examined how hearing loss, social isolation and poor sleep raise dementia risk. A neurologist in New York said lifestyle changes could delay symptoms for some people, although more trials are needed.",
            "Speakers also discussed the diversity of clinical trial participants, noting that Black and Hispanic older adults remain underrepresented in Alzheimer's drug studies.",
        ],
    ),
    dict(
        id="alz-lecanemab-approval", source="alz", date="2023-01-06", method="meta",
        url="https://www.alz.org/news/fda-accelerated-approval-lecanemab",
        title="Association welcomes accelerated approval of lecanemab",
        places=[("Tokyo", "Tokyo", "JP"), ("Cambridge", "Cambridge", "GB"),
                ("Massachusetts", "Massachusetts", "US")],
        paragraphs=[
            "The Food and Drug Administration granted accelerated approval to lecanemab, an antibody treatment for people with mild cognitive impairment or mild dementia due to Alzheimer's disease.",
            "The drug was developed by Eisai, which is headquartered in Tokyo, together with Biogen of Cambridge, Massachusetts. In a large trial the antibody removed amyloid plaque from the brain and slowed decline on a clinical rating scale by about a quarter over eighteen months.",
            "The association urged the Centers for Medicare and Medicaid Services to cover the drug without restrictions, saying that every month of delay means more people lose the chance to benefit while still in the early stage of the disease.",
            "Doctors noted that the antibody can cause brain swelling and small bleeds, known as amyloid related imaging abnormalities, so patients need regular MRI scans during treatment.",
        ],
    ),
    dict(
        id="alz-walk-2022", source="alz", date="2022-09-21", method="meta",
        url="https://www.alz.org/news/world-alzheimers-day-walks",
        title="Walks mark World Alzheimer's Day",
        places=[("London", "London", "GB"), ("Sydney", "Sydney", "AU"), ("Dublin", "Dublin", "IE")],
        paragraphs=[
            "Volunteers walked in hundreds of communities to mark World Alzheimer's Day and raise money for care, support and research.",
            "Partner organizations held events in London, Sydney and Dublin, where families carried purple flowers in memory of relatives with dementia.",
            "Organizers said stigma still stops many people from seeking a diagnosis. Surveys show that a large share of the public wrongly believes dementia is a normal part of ageing.",
            "Funds raised through the walks support a free helpline, local support groups and grants for early career scientists studying the causes of Alzheimer's disease.",
        ],
    ),
    dict(
        id="alz-caregiver-costs", source="alz", date="2022-11-15", method="meta",
        url="https://www.alz.org/news/caregiver-costs-survey",
        title="Survey finds rising out-of-pocket costs for dementia caregivers",
        places=[("United States", "United States", "US"), ("Florida", "Florida", "US"),
                ("Texas", "Texas", "US")],
        paragraphs=[
            "Family caregivers of people living with dementia in the United States are spending more of their own money on care, a new survey found.",
            "Caregivers reported paying for home health aides, adult day programs, medication and home modifications. Respondents in Florida and Texas described long waiting lists for publicly funded care services.",
            "Many caregivers said they had cut back on their own medical care or savings. The association is asking lawmakers to expand respite care and to improve payment for care planning visits.",
            "Experts say caregiver stress is linked to depression and poor sleep, and that training programs can help families manage behavior changes such as agitation.",
        ],
    ),
    # ------------------------------------------------------------------ bbc
    dict(
        id="bbc-blood-test", source="bbc", date="2022-06-14", method="time",
        url="https://www.bbc.com/news/health-61788890",
        title="Blood test could spot Alzheimer's years before symptoms",
        places=[("London", "London", "GB"), ("Oxford", "Oxford", "GB"), ("Sweden", "Sweden", "SE")],
        paragraphs=[
            "A simple blood test may be able to detect the early signs of Alzheimer's disease years before memory problems appear, researchers say.",
            "The test measures a form of the tau protein in blood. Scientists in London and Oxford worked with colleagues in Sweden to compare blood results with brain scans of hundreds of volunteers.",
            "The test predicted which people had amyloid and tau in the brain with high accuracy. Experts said blood tests would make it easier to recruit people into clinical trials and could one day be used in family doctor surgeries.",
            "Charities cautioned that the test is not yet available on the NHS and that a positive result must be followed by specialist assessment.",
        ],
    ),
    dict(
        id="bbc-lecanemab-trial", source="bbc", date="2022-09-28", method="time",
        url="https://www.bbc.com/news/health-63052592",
        title="Alzheimer's drug slows decline in landmark trial",
        places=[("Tokyo", "Tokyo", "JP"), ("England", "England", "GB")],
        paragraphs=[
            "An experimental Alzheimer's drug has slowed the decline in memory and thinking in a large clinical trial, the first time an amyloid antibody has shown a clear benefit.",
            "The drug company Eisai, based in Tokyo, said lecanemab reduced decline by 27 percent compared with a placebo over eighteen months in people with early Alzheimer's disease.",
            "Scientists called the trial result historic, but warned that the effect is modest and that side effects including brain swelling need careful monitoring.",
            "Health officials in England said the NHS would need more memory clinics, brain scanners and specialist staff before such drugs could be offered widely.",
        ],
    ),
    dict(
        id="bbc-hearing-aids", source="bbc", date="2022-10-11", method="time",
        url="https://www.bbc.com/news/health-63208419",
        title="Hearing aids linked to lower dementia risk",
        places=[("Birmingham", "Birmingham", "GB"), ("Wales", "Wales", "GB")],
        paragraphs=[
            "People with hearing loss who use hearing aids may have a lower risk of dementia than those who do not, a review of studies suggests.",
            "Researchers analysed data from more than one hundred thousand people. Hearing loss is one of the biggest modifiable risk factors for dementia.",
            "An audiologist in Birmingham said many older people wait years before getting a hearing test. Audiology services in Wales have started offering checks in community pharmacies.",
            "Experts said the findings do not prove that hearing aids prevent dementia, but that treating hearing loss improves quality of life and social contact.",
        ],
    ),
    dict(
        id="bbc-air-pollution", source="bbc", date="2022-12-05", method="time",
        url="https://www.bbc.com/news/health-63848801",
        title="Air pollution linked to higher dementia risk",
        places=[("Beijing", "Beijing", "CN"), ("Edinburgh", "Edinburgh", "GB"), ("Scotland", "Scotland", "GB")],
        paragraphs=[
            "Long-term exposure to fine particle air pollution is associated with a higher risk of dementia, according to a large analysis of health records.",
            "The study included data from cities such as Beijing, where pollution levels are high, as well as from Edinburgh and other parts of Scotland with cleaner air.",
            "Researchers found that the risk of dementia increased with each step up in particle exposure. Tiny particles may reach the brain and cause inflammation.",
            "Campaigners said cutting traffic emissions would benefit brain health as well as the heart and lungs.",
        ],
    ),
    dict(
        id="bbc-donanemab", source="bbc", date="2023-05-03", method="time",
        url="https://www.bbc.com/news/health-65465883",
        title="Donanemab trial results raise hopes for Alzheimer's treatment",
        places=[("United States", "United States", "US"), ("Amsterdam", "Amsterdam", "NL")],
        paragraphs=[
            "A second amyloid antibody, donanemab, slowed cognitive decline by about a third in people with early Alzheimer's disease, the drug maker Eli Lilly said.",
            "The company plans to ask regulators in the United States for approval and to present full trial results at a conference in Amsterdam.",
            "Patients in the trial stopped treatment once amyloid plaque had been cleared from the brain. Some participants experienced brain swelling and three deaths were linked to side effects.",
            "Charities said the results mark a turning point, but stressed that early diagnosis is essential because the drugs work best in the earliest stage of the disease.",
        ],
    ),
    # ------------------------------------------------------------------ nia
    dict(
        id="nia-sleep", source="nia", date="2022-06-21", method="url",
        url="https://www.nia.nih.gov/news/2022/06/21/deep-sleep-amyloid-clearance",
        title="Deep sleep may help clear amyloid from the brain",
        places=[("Boston", "Boston", "US"), ("Baltimore", "Baltimore", "US")],
        paragraphs=[
            "Older adults who spend more time in deep sleep appear to have less amyloid buildup in the brain, a study funded by the National Institute on Aging reports.",
            "Researchers in Boston tracked sleep with home devices and measured amyloid with brain scans. A separate group in Baltimore found that poor sleep quality predicted faster memory decline.",
            "During deep sleep the brain's waste clearance system is most active. The scientists suggest that improving sleep could be a target for prevention trials.",
            "The institute recommends that older adults keep a regular sleep schedule, limit caffeine late in the day and talk with a doctor about snoring or sleep apnea.",
        ],
    ),
    dict(
        id="nia-exercise", source="nia", date="2022-08-16", method="url",
        url="https://www.nia.nih.gov/news/2022/08/16/exercise-cognition-older-adults",
        title="Exercise trial shows modest gains in memory for older adults",
        places=[("Bethesda", None, None), ("Chicago", "Chicago", "US")],
        paragraphs=[
            "Regular aerobic exercise improved some measures of memory and thinking in older adults with mild cognitive impairment, according to a trial coordinated from Bethesda.",
            "Participants walked or cycled several times a week for a year. Volunteers at a site in Chicago also received nutrition counseling and cognitive training.",
            "Reading aloud each day was associated with small improvements in attention in a secondary analysis, although the authors said this finding needs confirmation.",
            "Physical activity is one of several healthy habits, together with blood pressure control and social engagement, that may lower the risk of dementia.",
        ],
    ),
    dict(
        id="nia-apoe", source="nia", date="2022-10-25", method="url",
        url="https://www.nia.nih.gov/news/2022/10/25/apoe4-genetic-risk-study",
        title="Study explores how the APOE4 gene raises Alzheimer's risk",
        places=[("Paris", "Paris", "FR"), ("Stockholm", "Stockholm", "SE"), ("Copenhagen", "Copenhagen", "DK")],
        paragraphs=[
            "Carrying the APOE4 form of the apolipoprotein E gene is the strongest genetic risk factor for late-onset Alzheimer's disease, and a new study helps explain why.",
            "Scientists compared brain tissue from donors in Paris, Stockholm and Copenhagen. APOE4 carriers showed more amyloid, more inflammation and weaker blood vessels in the brain.",
            "The researchers also found that the gene changes how brain cells handle cholesterol and fat. Drugs that correct these changes are being tested in laboratory models.",
            "People who learn they carry APOE4 should know that the gene raises risk but does not mean they will develop the disease, genetic counselors said.",
        ],
    ),
    dict(
        id="nia-funding", source="nia", date="2023-03-14", method="url",
        url="https://www.nia.nih.gov/news/2023/03/14/alzheimers-research-funding-plan",
        title="Research plan outlines priorities for Alzheimer's funding",
        places=[("Washington", "Washington", "US")],
        paragraphs=[
            "The National Institutes of Health released its professional judgment budget for Alzheimer's disease and related dementias, setting out research priorities for the coming year.",
            "Officials presented the plan to lawmakers in Washington. Priorities include new drug targets beyond amyloid, prevention trials, caregiver support and research on health disparities.",
            "The plan also highlights blood biomarkers, which could speed diagnosis and help researchers enroll more diverse participants in clinical trials.",
            "Funding for dementia research has grown substantially over the past decade, and the institute now supports hundreds of active clinical trials.",
            "About half of the active trials test drugs that do not target amyloid. These include compounds aimed at inflammation, blood vessel health, synapse protection and the metabolism of brain cells.",
            "The plan sets milestones for studies of people from underrepresented communities. Researchers will be asked to report how they recruit participants and to share data through open repositories.",
            "Another priority is care research. Pragmatic trials embedded in health systems will test ways to support caregivers, reduce hospital visits and improve care at the end of life.",
            "The institute will also expand brain banks and long-running cohort studies. Shared samples let scientists compare genetic, imaging and blood data across many groups of volunteers.",
            "Advocates welcomed the plan but said that steady yearly increases are needed. Young scientists often leave the field when grants are hard to win.",
            "Officials said progress will be reviewed each year. The next plan will add goals for studies of dementia with Lewy bodies and frontotemporal dementia, which receive far less attention than Alzheimer's disease.",
        ],
    ),
    dict(
        id="nia-caregiver-tips", source="nia", date=None, method=None,
        url="https://www.nia.nih.gov/health/tips-caregivers-sundowning",
        title="Tips for coping with sundowning",
        places=[],
        paragraphs=[
            "Sundowning is a term for restlessness, agitation and confusion that can begin or worsen as daylight fades in people living with Alzheimer's disease.",
            "Caregivers can help by keeping a predictable routine, reducing noise and clutter in the evening, and making sure the person gets daylight and exercise earlier in the day.",
            "Avoid caffeine and large meals late in the day. A night light can reduce confusion if the person wakes up in the dark.",
            "If sundowning gets worse or appears suddenly, talk with a doctor, because pain, infection or medication side effects can be the cause.",
        ],
    ),
    # ----------------------------------------------------------------- mayo
    dict(
        id="mayo-biomarkers", source="mayo", date="2022-06-28", method="text",
        url="https://newsnetwork.mayoclinic.org/discussion/blood-biomarkers-predict-memory-decline/",
        title="Blood biomarkers predict memory decline in community study",
        places=[("Rochester", "Rochester", "US"), ("Minnesota", "Minnesota", "US"),
                ("Jacksonville", "Jacksonville", "US"), ("Arizona", "Arizona", "US")],
        paragraphs=[
            "June 28, 2022",
            "Blood levels of tau and neurofilament light predicted which older adults would develop memory problems, according to a study of residents of Rochester, Minnesota.",
            "The research used data from a long-running study of aging that follows thousands of people with regular memory tests and brain imaging. Teams at campuses in Jacksonville and Arizona helped validate the results.",
            "The authors said blood biomarkers could help doctors decide who needs further testing, but that results must be interpreted together with a clinical examination.",
        ],
    ),
    dict(
        id="mayo-diet", source="mayo", date="2022-09-08", method="text",
        url="https://newsnetwork.mayoclinic.org/discussion/mediterranean-diet-and-brain-health/",
        title="Mediterranean diet and brain health: what the research says",
        places=[("Scottsdale", "Scottsdale", "US"), ("Arizona", "Arizona", "US"), ("Toronto", "Toronto", "CA")],
        paragraphs=[
            "September 8, 2022",
            "Eating a Mediterranean style diet rich in vegetables, fish, olive oil and whole grains is associated with slower cognitive decline, said dietitian Dr. Victoria Alvarez.",
            "Speaking at a community event in Scottsdale, Arizona, she said diet works best as part of a wider healthy lifestyle that includes exercise, sleep and social activity.",
            "A study from Toronto found that people who followed the diet closely had fewer signs of amyloid in the brain, although the difference was small.",
            "Experts recommend limiting processed meat, sugary drinks and fried food, and talking with a doctor before taking supplements marketed for memory.",
        ],
    ),
    dict(
        id="mayo-tau-pet", source="mayo", date="2022-11-30", method="text",
        url="https://newsnetwork.mayoclinic.org/discussion/tau-pet-imaging-study/",
        title="Tau imaging shows how Alzheimer's spreads through the brain",
        places=[("Jacksonville", "Jacksonville", "US"), ("Florida", "Florida", "US"),
                ("Melbourne", "Melbourne", "AU")],
        paragraphs=[
            "Posted 2022-11-30",
            "Brain scans that track the tau protein reveal that the disease spreads along connected brain networks, researchers in Jacksonville, Florida report.",
            "The team compared tau PET scans with scans collected by collaborators in Melbourne. Tau spread fastest in people who also had high amyloid levels.",
            "Tau imaging may help doctors predict the course of the disease and choose the right patients for new treatments.",
        ],
    ),
    dict(
        id="mayo-young-onset", source="mayo", date="2023-04-12", method="text",
        url="https://newsnetwork.mayoclinic.org/discussion/young-onset-alzheimers-support/",
        title="Support for families facing young-onset Alzheimer's",
        places=[("Rochester", "Rochester", "US"), ("Seoul", "Seoul", "KR")],
        paragraphs=[
            "April 12, 2023",
            "Young-onset Alzheimer's disease, diagnosed before age 65, brings particular challenges for families who are still raising children and working.",
            "A support program in Rochester pairs newly diagnosed patients with social workers and financial counselors. A similar program in Seoul offers job coaching for spouses.",
            "Genetic testing may be recommended when several family members developed dementia at a young age.",
        ],
    ),
    dict(
        id="mayo-memory-care", source="mayo", date=None, method=None,
        url="https://newsnetwork.mayoclinic.org/discussion/choosing-memory-care/",
        title="Choosing a memory care community",
        places=[("Canada", "Canada", "CA"), ("Mexico", None, None)],
        paragraphs=[
            "Families often struggle to decide when a person with dementia needs more care than can be provided at home.",
            "Memory care communities offer secure buildings, structured activities and staff trained in dementia care. Costs vary widely, and families from Canada and Mexico often ask about insurance coverage.",
            "Visit several communities, ask about staff turnover and training, and observe how residents are treated during meals and activities.",
            "A social worker can help families compare options and plan for the costs of long-term care.",
        ],
    ),
]

MINI_GAZETTEER = [
    # name, alternates, lat, lon, population, country
    ("London", "", 51.50853, -0.12574, 8961989, "GB"),
    ("Paris", "", 48.85341, 2.3488, 2138551, "FR"),
    ("Paris", "", 33.66094, -95.55551, 24782, "US"),
    ("New York City", "New York,NYC", 40.71427, -74.00597, 8804190, "US"),
    ("Boston", "", 42.35843, -71.05977, 675647, "US"),
    ("Chicago", "", 41.85003, -87.65005, 2746388, "US"),
    ("San Diego", "", 32.71571, -117.16472, 1386932, "US"),
    ("Toronto", "", 43.70643, -79.39864, 2794356, "CA"),
    ("Tokyo", "", 35.6895, 139.69171, 9733276, "JP"),
    ("Sydney", "", -33.86785, 151.20732, 4627345, "AU"),
    ("Stockholm", "", 59.32938, 18.06871, 1515017, "SE"),
    ("Copenhagen", "", 55.67594, 12.56553, 1153615, "DK"),
    ("Amsterdam", "", 52.37403, 4.88969, 741636, "NL"),
    ("Edinburgh", "", 55.95206, -3.19648, 506520, "GB"),
    ("Birmingham", "", 52.48142, -1.89983, 1144919, "GB"),
    ("Birmingham", "", 33.52066, -86.80249, 200733, "US"),
    ("Cambridge", "", 52.2, 0.11667, 145818, "GB"),
    ("Cambridge", "", 42.3751, -71.10561, 118403, "US"),
    ("Rochester", "", 43.15478, -77.61556, 211328, "US"),
    ("Rochester", "", 44.02163, -92.4699, 121395, "US"),
    ("Victoria", "", 48.43294, -123.3693, 91867, "CA"),
    ("Washington", "Washington D.C.", 38.89511, -77.03637, 689545, "US"),
    ("Beijing", "Peking", 39.9075, 116.39723, 18960744, "CN"),
    ("Dublin", "", 53.33306, -6.24889, 1173179, "IE"),
    ("Dublin", "", 37.70215, -121.93579, 72589, "US"),
    ("Oxford", "", 51.75222, -1.25596, 171380, "GB"),
    ("Reading", "", 51.45625, -0.97113, 318014, "GB"),
    ("Baltimore", "", 39.29038, -76.61219, 576498, "US"),
    ("Jacksonville", "", 30.33218, -81.65565, 949611, "US"),
    ("Scottsdale", "", 33.50921, -111.89903, 241361, "US"),
    ("Melbourne", "", -37.814, 144.96332, 4917750, "AU"),
    ("Melbourne", "", 28.08363, -80.60811, 84678, "US"),
    ("Seoul", "", 37.566, 126.9784, 10349312, "KR"),
    ("United States", "USA,United States of America,America", 38.89511, -77.03637, 331449281, "US"),
    ("Canada", "", 45.41117, -75.69812, 38005238, "CA"),
    ("Sweden", "", 59.32938, 18.06871, 10379295, "SE"),
    ("England", "", 52.36, -1.17, 56536000, "GB"),
    ("Scotland", "", 56.49, -4.2, 5463300, "GB"),
    ("Wales", "", 52.13, -3.78, 3107500, "GB"),
    ("Florida", "", 28.6, -82.4, 21538187, "US"),
    ("Texas", "", 31.5, -99.3, 29145505, "US"),
    ("Arizona", "", 34.3, -111.7, 7151502, "US"),
    ("Minnesota", "", 46.3, -94.3, 5706494, "US"),
    ("Massachusetts", "", 42.3, -71.8, 7029917, "US"),
]
