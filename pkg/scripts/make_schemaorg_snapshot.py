#!/usr/bin/env python3
"""Regenerate the pinned vocabulary snapshot fixture.

Emits fixtures/schemaorg/schemaorg-snapshot.jsonld in the flat-graph
release form: a curated, reference-closed subset of the Schema.org
vocabulary (the full release is fetched with `semmap fetch-vocab` when
network access exists). Every domain/range/supertype reference must point
at a node in the snapshot; the script fails if closure is broken.
"""
from __future__ import annotations

import json
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "fixtures" / "schemaorg" / "schemaorg-snapshot.jsonld"

# (local name, supertypes, comment)
CLASSES = [
    ("Thing", [], "The most generic type of item."),
    ("CreativeWork", ["Thing"], "The most generic kind of creative work, including books, movies, photographs, software programs, etc."),
    ("Movie", ["CreativeWork"], "A movie."),
    ("Book", ["CreativeWork"], "A book."),
    ("Article", ["CreativeWork"], "An article, such as a news article or piece of investigative report."),
    ("TVSeries", ["CreativeWork"], "CreativeWorkSeries dedicated to TV broadcast and associated online delivery."),
    ("Episode", ["CreativeWork"], "A media episode (e.g. TV, radio, video game) which can be part of a series or season."),
    ("MusicRecording", ["CreativeWork"], "A music recording (track), usually a single song."),
    ("MusicAlbum", ["CreativeWork"], "A collection of music tracks."),
    ("MediaObject", ["CreativeWork"], "A media object, such as an image, video, audio, or text object embedded in a web page or a downloadable dataset."),
    ("ImageObject", ["MediaObject"], "An image file."),
    ("VideoObject", ["MediaObject"], "A video file."),
    ("WebSite", ["CreativeWork"], "A WebSite is a set of related web pages and other items typically served from a single web domain and accessible via URLs."),
    ("WebPage", ["CreativeWork"], "A web page."),
    ("Review", ["CreativeWork"], "A review of an item - for example, of a restaurant, movie, or store."),
    ("Person", ["Thing"], "A person (alive, dead, undead, or fictional)."),
    ("Organization", ["Thing"], "An organization such as a school, NGO, corporation, club, etc."),
    ("Corporation", ["Organization"], "Organization: A business corporation."),
    ("EducationalOrganization", ["Organization"], "An educational organization."),
    ("CollegeOrUniversity", ["EducationalOrganization"], "A college, university, or other third-level educational institution."),
    ("School", ["EducationalOrganization"], "A school."),
    ("PerformingGroup", ["Organization"], "A performance group, such as a band, an orchestra, or a circus."),
    ("MusicGroup", ["PerformingGroup"], "A musical group, such as a band, an orchestra, or a choir. Can also be a solo musician."),
    ("SportsOrganization", ["Organization"], "Represents the collection of all sports organizations, including sports teams, governing bodies, and sports associations."),
    ("SportsTeam", ["SportsOrganization"], "Organization: Sports team."),
    ("Airline", ["Organization"], "An organization that provides flights for passengers."),
    ("LocalBusiness", ["Organization", "Place"], "A particular physical business or branch of an organization. Examples of LocalBusiness include a restaurant, a particular branch of a restaurant chain, a branch of a bank, a medical practice, a club, a bowling alley, etc."),
    ("Store", ["LocalBusiness"], "A retail good store."),
    ("FoodEstablishment", ["LocalBusiness"], "A food-related business."),
    ("Restaurant", ["FoodEstablishment"], "A restaurant."),
    ("LodgingBusiness", ["LocalBusiness"], "A lodging business, such as a motel, hotel, or inn."),
    ("Hotel", ["LodgingBusiness"], "A hotel is an establishment that provides lodging paid on a short-term basis."),
    ("AutomotiveBusiness", ["LocalBusiness"], "Car repair, sales, or parts."),
    ("AutoDealer", ["AutomotiveBusiness"], "An car dealership."),
    ("AutoRepair", ["AutomotiveBusiness"], "Car repair business."),
    ("EntertainmentBusiness", ["LocalBusiness"], "A business providing entertainment."),
    ("MovieTheater", ["EntertainmentBusiness"], "A movie theater."),
    ("Library", ["LocalBusiness"], "A library."),
    ("Place", ["Thing"], "Entities that have a somewhat fixed, physical extension."),
    ("AdministrativeArea", ["Place"], "A geographical region, typically under the jurisdiction of a particular government."),
    ("City", ["AdministrativeArea"], "A city or town."),
    ("Country", ["AdministrativeArea"], "A country."),
    ("State", ["AdministrativeArea"], "A state or province of a country."),
    ("CivicStructure", ["Place"], "A public structure, such as a town hall or concert hall."),
    ("Airport", ["CivicStructure"], "An airport."),
    ("Residence", ["Place"], "The place where a person lives."),
    ("ApartmentComplex", ["Residence"], "Residence type: Apartment complex."),
    ("Accommodation", ["Place"], "An accommodation is a place that can accommodate human beings, e.g. a hotel room, a camping pitch, or a meeting room. Many accommodations are for overnight stays, but this is not a mandatory requirement."),
    ("Apartment", ["Accommodation"], "An apartment (in American English) or flat (in British English) is a self-contained housing unit (a type of residential real estate) that occupies only part of a building."),
    ("House", ["Accommodation"], "A house is a building or structure that has the ability to be occupied for habitation by humans."),
    ("SingleFamilyResidence", ["House"], "Residence type: Single-family home."),
    ("Room", ["Accommodation"], "A room is a distinguishable space within a structure, usually separated from other spaces by interior walls."),
    ("Suite", ["Accommodation"], "A suite in a hotel or other public accommodation, denotes a class of luxury accommodations, the key feature of which is multiple rooms."),
    ("Event", ["Thing"], "An event happening at a certain time and location, such as a concert, lecture, or festival."),
    ("DeliveryEvent", ["Event"], "An event involving the delivery of an item."),
    ("Intangible", ["Thing"], "A utility class that serves as the umbrella for a number of 'intangible' things such as quantities, structured values, etc."),
    ("StructuredValue", ["Intangible"], "Structured values are used when the value of a property has a more complex structure than simply being a textual value or a reference to another thing."),
    ("ContactPoint", ["StructuredValue"], "A contact point, for example a Customer Complaints department."),
    ("PostalAddress", ["ContactPoint"], "The mailing address."),
    ("GeoCoordinates", ["StructuredValue"], "The geographic coordinates of a place or event."),
    ("GeoShape", ["StructuredValue"], "The geographic shape of a place. A GeoShape can be described using several properties whose values are based on latitude/longitude pairs."),
    ("QuantitativeValue", ["StructuredValue"], "A point value or interval for product characteristics and other purposes."),
    ("MonetaryAmount", ["StructuredValue"], "A monetary value or range. This type can be used to describe an amount of money such as $50 USD, or a range as in describing a bank account being suitable for a balance between £1,000 and £1,000,000 GBP, or the value of a salary, etc."),
    ("PriceSpecification", ["StructuredValue"], "A structured value representing a price or price range."),
    ("PropertyValue", ["StructuredValue"], "A property-value pair, e.g. representing a feature of a product or place."),
    ("OpeningHoursSpecification", ["StructuredValue"], "A structured value providing information about the opening hours of a place or a certain service inside a place."),
    ("OwnershipInfo", ["StructuredValue"], "A structured value providing information about when a certain organization or person owned a certain product."),
    ("EngineSpecification", ["StructuredValue"], "Information about the engine of the vehicle. A vehicle can have multiple engines represented by multiple engine specification entities."),
    ("Quantity", ["Intangible"], "Quantities such as distance, time, mass, weight, etc. Particular instances of say Mass are entities like '3 kg' or '4 milligrams'."),
    ("Duration", ["Quantity"], "Quantity: Duration (use ISO 8601 duration format)."),
    ("Distance", ["Quantity"], "Properties that take Distances as values are of the form '<Number> <Length unit of measure>'. E.g., '7 ft'."),
    ("Mass", ["Quantity"], "Properties that take Mass as values are of the form '<Number> <Mass unit of measure>'. E.g., '7 kg'."),
    ("Energy", ["Quantity"], "Properties that take Energy as values are of the form '<Number> <Energy unit of measure>'."),
    ("Rating", ["Intangible"], "A rating is an evaluation on a numeric scale, such as 1 to 5 stars."),
    ("AggregateRating", ["Rating"], "The average rating based on multiple ratings or reviews."),
    ("Brand", ["Intangible"], "A brand is a name used by an organization or business person for labeling a product, product group, or similar."),
    ("Audience", ["Intangible"], "Intended audience for an item, i.e. the group for whom the item was created."),
    ("Language", ["Intangible"], "Natural languages such as Spanish, Tamil, Hindi, English, etc. Formal language code tags expressed in BCP 47 can be used via the alternateName property."),
    ("Occupation", ["Intangible"], "A profession, may involve prolonged training and/or a formal qualification."),
    ("JobPosting", ["Intangible"], "A listing that describes a job opening in a certain organization."),
    ("Service", ["Intangible"], "A service provided by an organization, e.g. delivery service, print services, etc."),
    ("TaxiService", ["Service"], "A service for a vehicle for hire with a driver for local travel. Fares are usually calculated based on distance traveled."),
    ("Offer", ["Intangible"], "An offer to transfer some rights to an item or to provide a service - for example, an offer to sell tickets to an event, to rent the DVD of a movie, to stream a TV show over the internet, to repair a motorcycle, or to loan a book."),
    ("Demand", ["Intangible"], "A demand entity represents the public, not necessarily binding, not necessarily exclusive, announcement by an organization or person to seek a certain type of goods or services."),
    ("Order", ["Intangible"], "An order is a confirmation of a transaction (a receipt), which can contain multiple line items, each represented by an Offer that has been accepted by the customer."),
    ("OrderItem", ["Intangible"], "An order item is a line of an order. It includes the quantity and shipping details of a bought offer."),
    ("Invoice", ["Intangible"], "A statement of the money due for goods or services; a bill."),
    ("ParcelDelivery", ["Intangible"], "The delivery of a parcel either via the postal service or a commercial service."),
    ("Reservation", ["Intangible"], "Describes a reservation for travel, dining or an event. Some reservations require tickets."),
    ("LodgingReservation", ["Reservation"], "A reservation for lodging at a hotel, motel, inn, etc."),
    ("Ticket", ["Intangible"], "Used to describe a ticket to an event, a flight, a bus ride, etc."),
    ("Seat", ["Intangible"], "Used to describe a seat, such as a reserved seat in an event reservation."),
    ("Trip", ["Intangible"], "A trip or journey. An itinerary of visits to one or more places."),
    ("Flight", ["Trip"], "An airline flight."),
    ("ItemList", ["Intangible"], "A list of items of any sort - for example, Top 10 Movies About Weathermen, or Top 100 Party Songs. Not to be confused with HTML lists, which are often used only for formatting."),
    ("ListItem", ["Intangible"], "An list item, e.g. a step in a checklist or how-to description."),
    ("Action", ["Thing"], "An action performed by a direct agent and indirect participants upon a direct object."),
    ("TradeAction", ["Action"], "The act of participating in an exchange of goods and services for monetary compensation."),
    ("BuyAction", ["TradeAction"], "The act of giving money to a seller in exchange for goods or services rendered."),
    ("Enumeration", ["Intangible"], "Lists or enumerations - for example, a list of cuisines or music genres, etc."),
    ("StatusEnumeration", ["Enumeration"], "Lists or enumerations dealing with status types."),
    ("OrderStatus", ["StatusEnumeration"], "Enumerated status values for Order."),
    ("ItemAvailability", ["Enumeration"], "A list of possible product availability options."),
    ("DeliveryMethod", ["Enumeration"], "A delivery method is a standardized procedure for transferring the product or service to the destination of fulfillment chosen by the customer."),
    ("PaymentMethod", ["Enumeration"], "A payment method is a standardized procedure for transferring the monetary amount for a purchase."),
    ("OfferItemCondition", ["Enumeration"], "A list of possible conditions for the item."),
    ("Product", ["Thing"], "Any offered product or service. For example: a pair of shoes; a concert ticket; the rental of a car; a haircut; or an episode of a TV show streamed online."),
    ("IndividualProduct", ["Product"], "A single, identifiable product instance (e.g. a laptop with a particular serial number)."),
    ("ProductModel", ["Product"], "A datasheet or vendor specification of a product (in the sense of a prototypical description)."),
    ("Vehicle", ["Product"], "A vehicle is a device that is designed or used to transport people or cargo over land, water, air, or through space."),
    ("Car", ["Vehicle"], "A car is a wheeled, self-powered motor vehicle used for transportation."),
    ("Motorcycle", ["Vehicle"], "A motorcycle or motorbike is a single-track, two-wheeled motor vehicle."),
]

# (local name, domains, ranges, comment)
PROPERTIES = [
    ("name", ["Thing"], ["Text"], "The name of the item."),
    ("alternateName", ["Thing"], ["Text"], "An alias for the item."),
    ("description", ["Thing"], ["Text"], "A description of the item."),
    ("identifier", ["Thing"], ["PropertyValue", "Text", "URL"], "The identifier property represents any kind of identifier for any kind of Thing, such as ISBNs, GTIN codes, UUIDs etc. Schema.org provides dedicated properties for representing many of these, either as textual strings or as URL (URI) links."),
    ("url", ["Thing"], ["URL"], "URL of the item."),
    ("sameAs", ["Thing"], ["URL"], "URL of a reference Web page that unambiguously indicates the item's identity. E.g. the URL of the item's Wikipedia page, Wikidata entry, or official website."),
    ("additionalType", ["Thing"], ["Text", "URL"], "An additional type for the item, typically used for adding more specific types from external vocabularies in microdata syntax."),
    ("image", ["Thing"], ["ImageObject", "URL"], "An image of the item."),
    ("author", ["CreativeWork", "Rating"], ["Organization", "Person"], "The author of this content or rating."),
    ("creator", ["CreativeWork"], ["Organization", "Person"], "The creator/author of this CreativeWork. This is the same as the Author property for CreativeWork."),
    ("publisher", ["CreativeWork"], ["Organization", "Person"], "The publisher of the creative work."),
    ("director", ["Episode", "Movie", "TVSeries", "VideoObject"], ["Person"], "A director of e.g. TV, radio, movie, video gaming etc. content, or of an event. Directors can be associated with individual items or with a series, episode, clip."),
    ("actor", ["Episode", "Movie", "TVSeries", "VideoObject"], ["Person"], "An actor, e.g. in TV, radio, movie, video games etc. Actors can be associated with individual items or with a series, episode, clip."),
    ("musicBy", ["Episode", "Movie", "TVSeries", "VideoObject"], ["MusicGroup", "Person"], "The composer of the soundtrack."),
    ("producer", ["CreativeWork"], ["Organization", "Person"], "The person or organization who produced the work (e.g. music album, movie, TV/radio series etc.)."),
    ("productionCompany", ["Episode", "Movie", "TVSeries"], ["Organization"], "The production company or studio responsible for the item, e.g. series, video game, episode etc."),
    ("countryOfOrigin", ["CreativeWork"], ["Country"], "The country of origin of something, including products as well as creative works such as movie and TV content."),
    ("trailer", ["Episode", "Movie", "TVSeries"], ["VideoObject"], "The trailer of a movie or TV/radio series, season, episode, etc."),
    ("duration", ["Event", "MediaObject", "Movie", "MusicRecording"], ["Duration"], "The duration of the item (movie, audio recording, event, etc.) in ISO 8601 duration format."),
    ("datePublished", ["CreativeWork"], ["Date", "DateTime"], "Date of first publication or broadcast."),
    ("dateCreated", ["CreativeWork"], ["Date", "DateTime"], "The date on which the CreativeWork was created or the item was added to a DataFeed."),
    ("dateModified", ["CreativeWork"], ["Date", "DateTime"], "The date on which the CreativeWork was most recently modified or when the item's entry was modified within a DataFeed."),
    ("copyrightYear", ["CreativeWork"], ["Number"], "The year during which the claimed copyright for the CreativeWork was first asserted."),
    ("genre", ["CreativeWork", "MusicGroup"], ["Text", "URL"], "Genre of the creative work, broadcast channel or group."),
    ("headline", ["CreativeWork"], ["Text"], "Headline of the article."),
    ("keywords", ["CreativeWork"], ["Text", "URL"], "Keywords or tags used to describe some item. Multiple textual entries in a keywords list are typically delimited by commas."),
    ("text", ["CreativeWork"], ["Text"], "The textual content of this CreativeWork."),
    ("inLanguage", ["CreativeWork", "Event"], ["Language", "Text"], "The language of the content or performance or used in an action. Please use one of the language codes from the IETF BCP 47 standard."),
    ("isbn", ["Book"], ["Text"], "The ISBN of the book."),
    ("numberOfPages", ["Book"], ["Integer"], "The number of pages in the book."),
    ("bookEdition", ["Book"], ["Text"], "The edition of the book."),
    ("position", ["CreativeWork", "ListItem"], ["Integer", "Text"], "The position of an item in a series or sequence of items."),
    ("aggregateRating", ["CreativeWork", "Event", "Offer", "Organization", "Place", "Product", "Service"], ["AggregateRating"], "The overall rating, based on a collection of reviews or ratings, of the item."),
    ("review", ["CreativeWork", "Event", "Offer", "Organization", "Place", "Product", "Service"], ["Review"], "A review of the item."),
    ("reviewBody", ["Review"], ["Text"], "The actual body of the review."),
    ("reviewRating", ["Review"], ["Rating"], "The rating given in this review. Note that reviews can themselves be rated. The reviewRating applies to rating given by the review. The aggregateRating property applies to the review itself, as a creative work."),
    ("itemReviewed", ["AggregateRating", "Review"], ["Thing"], "The item that is being reviewed/rated."),
    ("reviewAspect", ["Rating", "Review"], ["Text"], "This Review or Rating is relevant to this part or facet of the itemReviewed."),
    ("ratingValue", ["Rating"], ["Number", "Text"], "The rating for the content."),
    ("bestRating", ["Rating"], ["Number", "Text"], "The highest value allowed in this rating system."),
    ("worstRating", ["Rating"], ["Number", "Text"], "The lowest value allowed in this rating system."),
    ("ratingCount", ["AggregateRating"], ["Integer"], "The count of total number of ratings."),
    ("reviewCount", ["AggregateRating"], ["Integer"], "The count of total number of reviews."),
    ("ratingExplanation", ["Rating"], ["Text"], "A short explanation (e.g. one to two sentences) providing background context and other information that led to the conclusion expressed in the rating."),
    ("givenName", ["Person"], ["Text"], "Given name. In the U.S., the first name of a Person."),
    ("familyName", ["Person"], ["Text"], "Family name. In the U.S., the last name of a Person."),
    ("additionalName", ["Person"], ["Text"], "An additional name for a Person, can be used for a middle name."),
    ("birthDate", ["Person"], ["Date"], "Date of birth."),
    ("deathDate", ["Person"], ["Date"], "Date of death."),
    ("birthPlace", ["Person"], ["Place"], "The place where the person was born."),
    ("nationality", ["Person"], ["Country"], "Nationality of the person."),
    ("gender", ["Person"], ["Text"], "Gender of something, typically a Person, but possibly also fictional characters, animals, etc."),
    ("email", ["ContactPoint", "Organization", "Person"], ["Text"], "Email address."),
    ("telephone", ["ContactPoint", "Organization", "Person", "Place"], ["Text"], "The telephone number."),
    ("faxNumber", ["ContactPoint", "Organization", "Person", "Place"], ["Text"], "The fax number."),
    ("jobTitle", ["Person"], ["Text"], "The job title of the person (for example, Financial Manager)."),
    ("worksFor", ["Person"], ["Organization"], "Organizations that the person works for."),
    ("affiliation", ["Person"], ["Organization"], "An organization that this person is affiliated with. For example, a school/university, a club, or a team."),
    ("address", ["GeoCoordinates", "GeoShape", "Organization", "Person", "Place"], ["PostalAddress", "Text"], "Physical address of the item."),
    ("height", ["MediaObject", "Person", "Product"], ["Distance", "QuantitativeValue"], "The height of the item."),
    ("width", ["MediaObject", "Product"], ["Distance", "QuantitativeValue"], "The width of the item."),
    ("depth", ["Product"], ["Distance", "QuantitativeValue"], "The depth of the item."),
    ("weight", ["Person", "Product"], ["Mass", "QuantitativeValue"], "The weight of the product or person."),
    ("knowsLanguage", ["Person"], ["Language", "Text"], "Of a Person, and less typically of an Organization, to indicate a known language. We do not distinguish skill levels or reading/writing/speaking/signing here. Use language codes from the IETF BCP 47 standard."),
    ("spouse", ["Person"], ["Person"], "The person's spouse."),
    ("memberOf", ["Organization", "Person"], ["Organization"], "An Organization (or ProgramMembership) to which this Person or Organization belongs."),
    ("alumniOf", ["Person"], ["EducationalOrganization", "Organization"], "An organization that the person is an alumni of."),
    ("alumni", ["EducationalOrganization", "Organization"], ["Person"], "Alumni of an organization."),
    ("homeLocation", ["Person"], ["ContactPoint", "Place"], "A contact location for a person's residence."),
    ("workLocation", ["Person"], ["ContactPoint", "Place"], "A contact location for a person's place of work."),
    ("legalName", ["Organization"], ["Text"], "The official name of the organization, e.g. the registered company name."),
    ("foundingDate", ["Organization"], ["Date"], "The date that this organization was founded."),
    ("founder", ["Organization"], ["Person"], "A person who founded this organization."),
    ("numberOfEmployees", ["Organization"], ["QuantitativeValue"], "The number of employees in an organization, e.g. business."),
    ("employee", ["Organization"], ["Person"], "Someone working for this organization."),
    ("member", ["Organization"], ["Organization", "Person"], "A member of an Organization or a ProgramMembership. Organizations can be members of organizations; ProgramMembership is typically for individuals."),
    ("parentOrganization", ["Organization"], ["Organization"], "The larger organization that this organization is a subOrganization of, if any."),
    ("subOrganization", ["Organization"], ["Organization"], "A relationship between two organizations where the first includes the second, e.g., as a subsidiary. See also: the more specific 'department' property."),
    ("department", ["Organization"], ["Organization"], "A relationship between an organization and a department of that organization, also described as an organization (allowing different urls, logos, opening hours)."),
    ("brand", ["Organization", "Person", "Product", "Service"], ["Brand", "Organization"], "The brand(s) associated with a product or service, or the brand(s) maintained by an organization or business person."),
    ("logo", ["Brand", "Organization", "Place", "Product", "Service"], ["ImageObject", "URL"], "An associated logo."),
    ("slogan", ["Brand", "Organization", "Place", "Product", "Service"], ["Text"], "A slogan or motto associated with the item."),
    ("taxID", ["Organization", "Person"], ["Text"], "The Tax / Fiscal ID of the organization or person, e.g. the TIN in the US or the CIF/NIF in Spain."),
    ("vatID", ["Organization", "Person"], ["Text"], "The Value-added Tax ID of the organization or person."),
    ("location", ["Action", "Event", "Organization"], ["Place", "PostalAddress", "Text"], "The location of, for example, where an event is happening, where an organization is located, or where an action takes place."),
    ("areaServed", ["ContactPoint", "Offer", "Organization", "Service"], ["AdministrativeArea", "GeoShape", "Place", "Text"], "The geographic area where a service or offered item is provided."),
    ("award", ["CreativeWork", "Organization", "Person", "Product", "Service"], ["Text"], "An award won by or for this item."),
    ("geo", ["Place"], ["GeoCoordinates", "GeoShape"], "The geo coordinates of the place."),
    ("latitude", ["GeoCoordinates", "Place"], ["Number", "Text"], "The latitude of a location. For example 37.42242 (WGS 84)."),
    ("longitude", ["GeoCoordinates", "Place"], ["Number", "Text"], "The longitude of a location. For example -122.08585 (WGS 84)."),
    ("elevation", ["GeoCoordinates", "GeoShape"], ["Number", "Text"], "The elevation of a location (WGS 84). Values may be of the form 'NUMBER UNIT_OF_MEASUREMENT' (e.g., '1,000 m', '3,200 ft') while numbers alone should be assumed to be a value in meters."),
    ("containedInPlace", ["Place"], ["Place"], "The basic containment relation between a place and one that contains it."),
    ("containsPlace", ["Place"], ["Place"], "The basic containment relation between a place and another that it contains."),
    ("addressCountry", ["GeoCoordinates", "GeoShape", "PostalAddress"], ["Country", "Text"], "The country. Recommended to be in 2-letter ISO 3166-1 alpha-2 format, for example 'US'. For backward compatibility, a 3-letter ISO 3166-1 alpha-3 country code such as 'SGP' or a full country name such as 'Singapore' can also be used."),
    ("addressLocality", ["PostalAddress"], ["Text"], "The locality in which the street address is, and which is in the region. For example, Mountain View."),
    ("addressRegion", ["PostalAddress"], ["Text"], "The region in which the locality is, and which is in the country. For example, California or another appropriate first-level Administrative division."),
    ("postalCode", ["GeoCoordinates", "GeoShape", "PostalAddress"], ["Text"], "The postal code. For example, 94043."),
    ("streetAddress", ["PostalAddress"], ["Text"], "The street address. For example, 1600 Amphitheatre Pkwy."),
    ("postOfficeBoxNumber", ["PostalAddress"], ["Text"], "The post office box number for PO box addresses."),
    ("contactType", ["ContactPoint"], ["Text"], "A person or organization can have different contact points, for different purposes. For example, a sales contact point, a PR contact point and so on. This property is used to specify the kind of contact point."),
    ("availableLanguage", ["ContactPoint", "LodgingBusiness", "Service"], ["Language", "Text"], "A language someone may use with or at the item, service or place. Please use one of the language codes from the IETF BCP 47 standard."),
    ("openingHours", ["CivicStructure", "LocalBusiness"], ["Text"], "The general opening hours for a business. Opening hours can be specified as a weekly time range, starting with days, then times per day."),
    ("openingHoursSpecification", ["Place"], ["OpeningHoursSpecification"], "The opening hours of a certain place."),
    ("opens", ["OpeningHoursSpecification"], ["Time"], "The opening hour of the place or service on the given day(s) of the week."),
    ("closes", ["OpeningHoursSpecification"], ["Time"], "The closing hour of the place or service on the given day(s) of the week."),
    ("validFrom", ["Demand", "Offer", "OpeningHoursSpecification", "PriceSpecification"], ["Date", "DateTime"], "The date when the item becomes valid."),
    ("validThrough", ["Demand", "JobPosting", "Offer", "OpeningHoursSpecification", "PriceSpecification"], ["Date", "DateTime"], "The date after when the item is not valid. For example the end of an offer, salary period, or a period of opening hours."),
    ("maximumAttendeeCapacity", ["Event", "Place"], ["Integer"], "The total number of individuals that may attend an event or venue."),
    ("priceRange", ["LocalBusiness"], ["Text"], "The price range of the business, for example $$$."),
    ("currenciesAccepted", ["LocalBusiness"], ["Text"], "The currency accepted. Use standard formats: ISO 4217 currency format, e.g. 'USD'; Ticker symbol for cryptocurrencies, e.g. 'BTC'."),
    ("paymentAccepted", ["LocalBusiness"], ["Text"], "Cash, Credit Card, Cryptocurrency, Local Exchange Tradings System, etc."),
    ("servesCuisine", ["FoodEstablishment"], ["Text"], "The cuisine of the restaurant."),
    ("menu", ["FoodEstablishment"], ["Text", "URL"], "Either the actual menu as a structured representation, as text, or a URL of the menu."),
    ("acceptsReservations", ["FoodEstablishment"], ["Boolean", "Text", "URL"], "Indicates whether a FoodEstablishment accepts reservations. Values can be Boolean, an URL at which reservations can be made or (for backwards compatibility) the strings Yes or No."),
    ("checkinTime", ["LodgingBusiness", "LodgingReservation"], ["DateTime", "Time"], "The earliest someone may check into a lodging establishment."),
    ("checkoutTime", ["LodgingBusiness", "LodgingReservation"], ["DateTime", "Time"], "The latest someone may check out of a lodging establishment."),
    ("numberOfRooms", ["Accommodation", "ApartmentComplex", "House", "LodgingBusiness", "SingleFamilyResidence", "Suite"], ["Number", "QuantitativeValue"], "The number of rooms (excluding bathrooms and closets) of the accommodation or lodging business. Typical unit code(s): ROM for room or C62 for no unit. The type of room can be put in the unitText property of the QuantitativeValue."),
    ("floorSize", ["Accommodation"], ["QuantitativeValue"], "The size of the accommodation, e.g. in square meter or squarefoot. Typical unit code(s): MTK for square meter, FTK for square foot, or YDK for square yard."),
    ("numberOfBathroomsTotal", ["Accommodation"], ["Integer"], "The total integer number of bathrooms in some Accommodation, following real estate conventions as documented in RESO: the simple sum of the number of bathrooms."),
    ("numberOfFullBathrooms", ["Accommodation"], ["Number"], "Number of full bathrooms - The total number of full and ¾ bathrooms in an Accommodation."),
    ("numberOfBedrooms", ["Accommodation", "ApartmentComplex"], ["Number", "QuantitativeValue"], "The total integer number of bedrooms in a some Accommodation, ApartmentComplex or FloorPlan."),
    ("petsAllowed", ["Accommodation", "ApartmentComplex", "LodgingBusiness"], ["Boolean", "Text"], "Indicates whether pets are allowed to enter the accommodation or lodging business. More detailed information can be put in a text value."),
    ("floorLevel", ["Accommodation"], ["Text"], "The floor level for an Accommodation in a multi-storey building. Since counting systems vary internationally, the local system should be used where possible."),
    ("permittedUsage", ["Accommodation"], ["Text"], "Indications regarding the permitted usage of the accommodation."),
    ("occupancy", ["Accommodation", "Apartment", "House", "Room", "SingleFamilyResidence", "Suite"], ["QuantitativeValue"], "The allowed total occupancy for the accommodation in persons (including infants etc). For individual accommodations, this is not necessarily the legal maximum but defines the permitted usage as per the contractual agreement (e.g. a double room used by a single person)."),
    ("leaseLength", ["Accommodation", "Offer"], ["Duration", "QuantitativeValue"], "Length of the lease for some Accommodation, either particular to some Offer or in some cases intrinsic to the property."),
    ("yearBuilt", ["Accommodation"], ["Number"], "The year an Accommodation was constructed. This corresponds to the YearBuilt field in RESO."),
    ("accommodationCategory", ["Accommodation"], ["Text"], "Category of an Accommodation, following real estate conventions, e.g. RESO (see PropertySubType, and PropertyType fields for suggested values)."),
    ("numberOfAvailableAccommodationUnits", ["ApartmentComplex"], ["QuantitativeValue"], "Indicates the number of available accommodation units in an ApartmentComplex, or the number of accommodation units for a specific Floorplan (within its specific ApartmentComplex)."),
    ("numberOfAccommodationUnits", ["ApartmentComplex"], ["QuantitativeValue"], "Indicates the total (available plus unavailable) number of accommodation units in an ApartmentComplex, or the number of accommodation units for a specific Floorplan (within its specific ApartmentComplex)."),
    ("sku", ["Demand", "Offer", "Product"], ["Text"], "The Stock Keeping Unit (SKU), i.e. a merchant-specific identifier for a product or service, or the product to which the offer refers."),
    ("gtin", ["Demand", "Offer", "Product"], ["Text", "URL"], "A Global Trade Item Number (GTIN). GTINs identify trade items, including products and services, using numeric identification codes."),
    ("gtin13", ["Demand", "Offer", "Product"], ["Text"], "The GTIN-13 code of the product, or the product to which the offer refers. This is equivalent to 13-digit ISBN codes and EAN UCC-13."),
    ("mpn", ["Demand", "Offer", "Product"], ["Text"], "The Manufacturer Part Number (MPN) of the product, or the product to which the offer refers."),
    ("productID", ["Product"], ["Text"], "The product identifier, such as ISBN. For example: meta itemprop=\"productID\" content=\"isbn:123-456-789\"."),
    ("model", ["Product"], ["ProductModel", "Text"], "The model of the product. Use with the URL of a ProductModel or a textual representation of the model identifier. The URL of the ProductModel can be from an external source. It is recommended to additionally provide strong product identifiers via the gtin8/gtin13/gtin14 and mpn properties."),
    ("color", ["Product"], ["Text"], "The color of the product."),
    ("material", ["CreativeWork", "Product"], ["Text", "URL"], "A material that something is made from, e.g. leather, wool, cotton, paper."),
    ("manufacturer", ["Product"], ["Organization"], "The manufacturer of the product."),
    ("releaseDate", ["Product"], ["Date"], "The release date of a product or product model. This can be used to distinguish the exact variant of a product."),
    ("productionDate", ["Product", "Vehicle"], ["Date"], "The date of production of the item, e.g. vehicle."),
    ("purchaseDate", ["Product", "Vehicle"], ["Date"], "The date the item, e.g. vehicle, was purchased by the current owner."),
    ("category", ["Offer", "Product", "Service"], ["Text", "URL"], "A category for the item. Greater signs or slashes can be used to informally indicate a category hierarchy."),
    ("isRelatedTo", ["Product", "Service"], ["Product", "Service"], "A pointer to another, somehow related product (or multiple products)."),
    ("isSimilarTo", ["Product", "Service"], ["Product", "Service"], "A pointer to another, functionally similar product (or multiple products)."),
    ("itemCondition", ["Demand", "Offer", "Product"], ["OfferItemCondition"], "A predefined value from OfferItemCondition specifying the condition of the product or service, or the products or services included in the offer."),
    ("vehicleIdentificationNumber", ["Vehicle"], ["Text"], "The Vehicle Identification Number (VIN) is a unique serial number used by the automotive industry to identify individual motor vehicles."),
    ("vehicleModelDate", ["Vehicle"], ["Date"], "The release date of a vehicle model (often used to differentiate versions of the same make and model)."),
    ("mileageFromOdometer", ["Vehicle"], ["QuantitativeValue"], "The total distance travelled by the particular vehicle since its initial production, as read from its odometer."),
    ("vehicleEngine", ["Vehicle"], ["EngineSpecification"], "Information about the engine or engines of the vehicle."),
    ("engineDisplacement", ["EngineSpecification"], ["QuantitativeValue"], "The volume swept by all of the pistons inside the cylinders of an internal combustion engine in a single movement."),
    ("enginePower", ["EngineSpecification"], ["QuantitativeValue"], "The power of the vehicle's engine."),
    ("engineType", ["EngineSpecification"], ["Text", "URL"], "The type of engine or engines powering the vehicle."),
    ("fuelType", ["EngineSpecification", "Vehicle"], ["Text", "URL"], "The type of fuel suitable for the engine or engines of the vehicle. If the vehicle has only one engine, this property can be attached directly to the vehicle."),
    ("fuelConsumption", ["Vehicle"], ["QuantitativeValue"], "The amount of fuel consumed for traveling a particular distance or temporal duration with the given vehicle (e.g. liters per 100 km)."),
    ("numberOfDoors", ["Vehicle"], ["Number", "QuantitativeValue"], "The number of doors."),
    ("numberOfAxles", ["Vehicle"], ["Number", "QuantitativeValue"], "The number of axles."),
    ("numberOfForwardGears", ["Vehicle"], ["Number", "QuantitativeValue"], "The total number of forward gears available for the transmission system of the vehicle."),
    ("driveWheelConfiguration", ["Vehicle"], ["Text"], "The drive wheel configuration, i.e. which roadwheels will receive torque from the vehicle's engine via the drivetrain."),
    ("vehicleTransmission", ["Vehicle"], ["Text", "URL"], "The type of component used for transmitting the power from a rotating power source to the wheels or other relevant component(s) (\"gearbox\" for cars)."),
    ("vehicleSeatingCapacity", ["Vehicle"], ["Number", "QuantitativeValue"], "The number of passengers that can be seated in the vehicle, both in terms of the physical space available, and in terms of limitations set by law."),
    ("vehicleConfiguration", ["Vehicle"], ["Text"], "A short text indicating the configuration of the vehicle, e.g. '5dr hatchback ST 2.5 MT 225 hp' or 'limited edition'."),
    ("vehicleInteriorColor", ["Vehicle"], ["Text"], "The color or color combination of the interior of the vehicle."),
    ("vehicleInteriorType", ["Vehicle"], ["Text"], "The type or material of the interior of the vehicle (e.g. synthetic fabric, leather, wood, etc.)."),
    ("dateVehicleFirstRegistered", ["Vehicle"], ["Date"], "The date of the first registration of the vehicle with the respective public authorities."),
    ("knownVehicleDamages", ["Vehicle"], ["Text"], "A textual description of known damages, both repaired and unrepaired."),
    ("bodyType", ["Vehicle"], ["Text", "URL"], "Indicates the design and body style of the vehicle (e.g. station wagon, hatchback, etc.)."),
    ("price", ["Offer", "PriceSpecification", "TradeAction"], ["Number", "Text"], "The offer price of a product, or of a price component when attached to PriceSpecification and its subtypes."),
    ("priceCurrency", ["Offer", "PriceSpecification", "Reservation", "Ticket", "TradeAction"], ["Text"], "The currency of the price, or a price component when attached to PriceSpecification and its subtypes. Use standard formats: ISO 4217 currency format, e.g. 'USD'."),
    ("priceValidUntil", ["Offer"], ["Date"], "The date after which the price is no longer available."),
    ("availability", ["Demand", "Offer"], ["ItemAvailability"], "The availability of this item - for example In stock, Out of stock, Pre-order, etc."),
    ("itemOffered", ["Demand", "Offer"], ["CreativeWork", "Event", "Product", "Service", "Trip"], "An item being offered (or demanded). The transactional nature of the offer or demand is documented using businessFunction, e.g. sell, lease etc. While several common expected types are listed explicitly in this definition, others can be used. Using a second type, such as Product or a subtype of Product, can clarify the nature of the offer."),
    ("offeredBy", ["Offer"], ["Organization", "Person"], "A pointer to the organization or person making the offer."),
    ("seller", ["BuyAction", "Demand", "Offer", "Order"], ["Organization", "Person"], "An entity which offers (sells / leases / lends / loans) the services / goods. A seller may also be a provider."),
    ("inventoryLevel", ["Demand", "Offer"], ["QuantitativeValue"], "The current approximate inventory level for the item or items."),
    ("offers", ["CreativeWork", "Event", "Place", "Product", "Service", "Trip"], ["Demand", "Offer"], "An offer to provide this item - for example, an offer to sell a product, rent the DVD of a movie, perform a service, or give away tickets to an event. Use businessFunction to indicate the kind of transaction offered, i.e. sell, lease, etc. This property can also be used to describe a Demand."),
    ("orderNumber", ["Order"], ["Text"], "The identifier of the transaction."),
    ("orderDate", ["Order"], ["Date", "DateTime"], "Date order was placed."),
    ("orderStatus", ["Order"], ["OrderStatus"], "The current status of the order."),
    ("orderedItem", ["Order", "OrderItem"], ["OrderItem", "Product", "Service"], "The item ordered."),
    ("customer", ["Invoice", "Order"], ["Organization", "Person"], "Party placing the order or paying the invoice."),
    ("billingAddress", ["Order"], ["PostalAddress"], "The billing address for the order."),
    ("orderDelivery", ["Order", "OrderItem"], ["ParcelDelivery"], "The delivery of the parcel related to this order or order item."),
    ("paymentMethod", ["Invoice", "Order"], ["PaymentMethod"], "The name of the credit card or other method of payment for the order."),
    ("paymentDueDate", ["Invoice", "Order"], ["Date", "DateTime"], "The date that payment is due."),
    ("discount", ["Order"], ["Number", "Text"], "Any discount applied (to an Order)."),
    ("isGift", ["Order"], ["Boolean"], "Indicates whether the offer was accepted as a gift for someone other than the buyer."),
    ("acceptedOffer", ["Order"], ["Offer"], "The offer(s) -- e.g., product, quantity and price combinations -- included in the order."),
    ("partOfInvoice", ["Order"], ["Invoice"], "The order is being paid as part of the referenced Invoice."),
    ("confirmationNumber", ["Invoice", "Order"], ["Text"], "A number that confirms the given order or payment has been received."),
    ("orderItemNumber", ["OrderItem"], ["Text"], "The identifier of the order item."),
    ("orderQuantity", ["OrderItem"], ["Number", "QuantitativeValue"], "The number of the item ordered. If the property is not set, assume the quantity is one."),
    ("orderItemStatus", ["OrderItem"], ["OrderStatus"], "The current status of the order item."),
    ("totalPaymentDue", ["Invoice"], ["MonetaryAmount", "PriceSpecification"], "The total amount due."),
    ("paymentStatus", ["Invoice"], ["Text"], "The status of payment; whether the invoice has been paid or not."),
    ("trackingNumber", ["ParcelDelivery"], ["Text"], "Shipper tracking number."),
    ("trackingUrl", ["ParcelDelivery"], ["URL"], "Tracking url for the parcel delivery."),
    ("carrier", ["Flight", "ParcelDelivery"], ["Organization"], "'carrier' is an out-dated term indicating the 'provider' for parcel delivery and flights."),
    ("deliveryAddress", ["ParcelDelivery"], ["PostalAddress"], "Destination address."),
    ("originAddress", ["ParcelDelivery"], ["PostalAddress"], "Shipper's address."),
    ("expectedArrivalFrom", ["ParcelDelivery"], ["Date", "DateTime"], "The earliest date the package may arrive."),
    ("expectedArrivalUntil", ["ParcelDelivery"], ["Date", "DateTime"], "The latest date the package may arrive."),
    ("deliveryStatus", ["ParcelDelivery"], ["DeliveryEvent"], "New entry added as the package passes through each leg of its journey (from shipment to final delivery)."),
    ("itemShipped", ["ParcelDelivery"], ["Product"], "Item(s) being shipped."),
    ("provider", ["CreativeWork", "Invoice", "ParcelDelivery", "Reservation", "Service", "Trip"], ["Organization", "Person"], "The service provider, service operator, or service performer; the goods producer. Another party (a seller) may offer those services or goods on behalf of the provider. A provider may also serve as the seller."),
    ("hasDeliveryMethod", ["DeliveryEvent", "ParcelDelivery"], ["DeliveryMethod"], "Method used for delivery or shipping."),
    ("availableFrom", ["DeliveryEvent"], ["DateTime"], "When the item is available for pickup from the store, locker, etc."),
    ("availableThrough", ["DeliveryEvent"], ["DateTime"], "After this date, the item will no longer be available for pickup."),
    ("startDate", ["Event"], ["Date", "DateTime"], "The start date and time of the item (in ISO 8601 date format)."),
    ("endDate", ["Event"], ["Date", "DateTime"], "The end date and time of the item (in ISO 8601 date format)."),
    ("doorTime", ["Event"], ["DateTime", "Time"], "The time admission will commence."),
    ("organizer", ["Event"], ["Organization", "Person"], "An organizer of an Event."),
    ("performer", ["Event"], ["Organization", "Person"], "A performer at the event - for example, a presenter, musician, musical group or actor."),
    ("attendee", ["Event"], ["Organization", "Person"], "A person or organization attending the event."),
    ("departureTime", ["Trip"], ["DateTime", "Time"], "The expected departure time."),
    ("arrivalTime", ["Trip"], ["DateTime", "Time"], "The expected arrival time."),
    ("departureAirport", ["Flight"], ["Airport"], "The airport where the flight originates."),
    ("arrivalAirport", ["Flight"], ["Airport"], "The airport where the flight terminates."),
    ("flightNumber", ["Flight"], ["Text"], "The unique identifier for a flight including the airline IATA code. For example, if describing United flight 110, where the IATA code for United is 'UA', the flightNumber is 'UA110'."),
    ("iataCode", ["Airline", "Airport"], ["Text"], "IATA identifier for an airline or airport."),
    ("icaoCode", ["Airport"], ["Text"], "ICAO identifier for an airport."),
    ("reservationId", ["Reservation"], ["Text"], "A unique identifier for the reservation."),
    ("reservationFor", ["Reservation"], ["Thing"], "The thing -- flight, event, restaurant, etc. being reserved."),
    ("underName", ["Reservation", "Ticket"], ["Organization", "Person"], "The person or organization the reservation or ticket is for."),
    ("numAdults", ["LodgingReservation"], ["Integer", "QuantitativeValue"], "The number of adults staying in the unit."),
    ("numChildren", ["LodgingReservation"], ["Integer", "QuantitativeValue"], "The number of children staying in the unit."),
    ("lodgingUnitType", ["LodgingReservation"], ["Text"], "Textual description of the unit type (including suite vs. room, size of bed, etc.)."),
    ("title", ["JobPosting"], ["Text"], "The title of the job."),
    ("baseSalary", ["JobPosting"], ["MonetaryAmount", "Number", "PriceSpecification"], "The base salary of the job or of an employee in an EmployeeRole."),
    ("datePosted", ["JobPosting"], ["Date", "DateTime"], "Publication date of an online listing."),
    ("employmentType", ["JobPosting"], ["Text"], "Type of employment (e.g. full-time, part-time, contract, temporary, seasonal, internship)."),
    ("hiringOrganization", ["JobPosting"], ["Organization", "Person"], "Organization or Person offering the job position."),
    ("jobLocation", ["JobPosting"], ["Place"], "A (typically single) geographic location associated with the job position."),
    ("value", ["MonetaryAmount", "PropertyValue", "QuantitativeValue"], ["Boolean", "Number", "StructuredValue", "Text"], "The value of a QuantitativeValue (including Observation) or property value node."),
    ("minValue", ["MonetaryAmount", "PropertyValue", "QuantitativeValue"], ["Number"], "The lower value of some characteristic or property."),
    ("maxValue", ["MonetaryAmount", "PropertyValue", "QuantitativeValue"], ["Number"], "The upper value of some characteristic or property."),
    ("unitCode", ["PropertyValue", "QuantitativeValue"], ["Text", "URL"], "The unit of measurement given using the UN/CEFACT Common Code (3 characters) or a URL. Other codes than the UN/CEFACT Common Code may be used with a prefix followed by a colon."),
    ("unitText", ["PropertyValue", "QuantitativeValue"], ["Text"], "A string or text indicating the unit of measurement. Useful if you cannot provide a standard unit code for unitCode."),
    ("currency", ["MonetaryAmount"], ["Text"], "The currency in which the monetary amount is expressed. Use standard formats: ISO 4217 currency format, e.g. 'USD'."),
    ("propertyID", ["PropertyValue"], ["Text", "URL"], "A commonly used identifier for the characteristic represented by the property, e.g. a manufacturer or a standard code for a property."),
    ("itemListElement", ["ItemList"], ["ListItem", "Text", "Thing"], "For itemListElement values, you can use simple strings (e.g. \"Peter\", \"Paul\", \"Mary\"), existing entities, or use ListItem."),
    ("numberOfItems", ["ItemList"], ["Integer"], "The number of items in an ItemList. Note that some descriptions might not fully describe all items in a list (e.g., multi-page pagination); in such cases, the numberOfItems would be for the entire list."),
    ("item", ["ListItem"], ["Thing"], "An entity represented by an entry in a list or data feed (e.g. an 'artist' in a list of 'artists')."),
    ("contentUrl", ["MediaObject"], ["URL"], "Actual bytes of the media object, for example the image file or video file."),
    ("uploadDate", ["MediaObject"], ["Date", "DateTime"], "Date (including time if available) when this media object was uploaded to this site."),
    ("embedUrl", ["MediaObject"], ["URL"], "A URL pointing to a player for a specific video. In general, this is the information in the src element of an embed tag and should not be the same as the content of the loc tag."),
    ("encodingFormat", ["CreativeWork", "MediaObject"], ["Text", "URL"], "Media type typically expressed using a MIME format (see IANA site and MDN reference), e.g. application/zip for a SoftwareApplication binary, audio/mpeg for .mp3 etc."),
    ("contentSize", ["MediaObject"], ["Text"], "File size in (mega/kilo)bytes."),
    ("caption", ["ImageObject", "VideoObject"], ["Text"], "The caption for this object. For downloadable machine formats (closed caption, subtitles etc.) use MediaObject and indicate the encodingFormat."),
    ("serviceType", ["Service"], ["Text"], "The type of service being offered, e.g. veterans' benefits, emergency relief, etc."),
    ("agent", ["Action"], ["Organization", "Person"], "The direct performer or driver of the action (animate or inanimate). E.g. John wrote a book."),
    ("object", ["Action"], ["Thing"], "The object upon which the action is carried out, whose state is kept intact or changed. Also known as the semantic roles patient, affected or undergoer (which change their state) or theme (which doesn't). E.g. John read a book."),
    ("startTime", ["Action"], ["DateTime", "Time"], "The startTime of something. For a reserved event or service (e.g. FoodEstablishmentReservation), the time that it is expected to start."),
    ("endTime", ["Action"], ["DateTime", "Time"], "The endTime of something. For a reserved event or service (e.g. FoodEstablishmentReservation), the time that it is expected to end."),
    ("priceSpecification", ["Offer", "TradeAction"], ["PriceSpecification"], "One or more detailed price specifications, indicating the unit price and delivery or payment charges."),
    ("acquiredFrom", ["OwnershipInfo"], ["Organization", "Person"], "The organization or person from which the product was acquired."),
    ("ownedFrom", ["OwnershipInfo"], ["DateTime"], "The date and time of obtaining the product."),
    ("ownedThrough", ["OwnershipInfo"], ["DateTime"], "The date and time of giving up ownership on the product."),
    ("typeOfGood", ["OwnershipInfo"], ["Product", "Service"], "The product that this structured value is referring to."),
    ("owns", ["Organization", "Person"], ["OwnershipInfo", "Product"], "Products owned by the organization or person."),
]

# Terms from the staging area: parsed, excluded from the default index set.
PENDING = [
    ("class", "MemberProgram", ["Intangible"], "A MemberProgram defines a loyalty (or membership) program that provides its members with certain benefits, for example better pricing, free shipping or returns, or the ability to earn loyalty points."),
    ("class", "ServicePeriod", ["StructuredValue"], "ServicePeriod represents a duration with some constraints about cutoff time and business days."),
    ("property", "hasMemberProgram", ["Organization"], ["MemberProgram"], "MemberProgram offered by an Organization, for example an eCommerce merchant offering a loyalty program."),
]

# Retired terms: kept with their replacement pointer, excluded by default.
SUPERSEDED = [
    ("class", "Taxi", ["Service"], "A taxi.", "TaxiService"),
    ("property", "awards", ["CreativeWork", "Organization", "Person", "Product"], ["Text"], "Awards won by or for this item.", "award"),
    ("property", "map", ["Place"], ["URL"], "A URL to a map of the place.", "hasMap"),
]

# Active replacement target for the superseded "map" property.
EXTRA_ACTIVE_PROPERTIES = [
    ("hasMap", ["Place"], ["URL"], "A URL to a map of the place."),
]

DATATYPES = [
    ("DataType", [], "The basic data types such as Integers, Strings, etc."),
    ("Text", ["DataType"], "Data type: Text."),
    ("URL", ["Text"], "Data type: URL."),
    ("Number", ["DataType"], "Data type: Number. Usage guidelines: Use values from 0123456789 (Unicode 'DIGIT ZERO' (U+0030) to 'DIGIT NINE' (U+0039)) rather than superficially similar Unicode symbols. Use '.' (Unicode 'FULL STOP' (U+002E)) rather than ',' to indicate a decimal point."),
    ("Integer", ["Number"], "Data type: Integer."),
    ("Float", ["Number"], "Data type: Floating number."),
    ("Date", ["DataType"], "A date value in ISO 8601 date format."),
    ("DateTime", ["DataType"], "A combination of date and time of day in the form [-]CCYY-MM-DDThh:mm:ss[Z|(+|-)hh:mm] (see Chapter 5.4 of ISO 8601)."),
    ("Time", ["DataType"], "A point in time recurring on multiple days in the form hh:mm:ss[Z|(+|-)hh:mm] (see XML schema for details)."),
    ("Boolean", ["DataType"], "Boolean: True or False."),
]


def _ref(local: str) -> dict:
    return {"@id": f"schema:{local}"}


def _refs(locals_: list[str]):
    items = [_ref(x) for x in locals_]
    return items[0] if len(items) == 1 else items


def build_nodes() -> list[dict]:
    nodes: list[dict] = []

    for local, supers, comment in DATATYPES:
        node = {
            "@id": f"schema:{local}",
            "@type": ["rdfs:Class", "schema:DataType"] if local == "DataType" or not supers or supers == ["DataType"] else "rdfs:Class",
            "rdfs:comment": comment,
            "rdfs:label": local,
        }
        if supers:
            node["rdfs:subClassOf"] = _refs(supers)
        nodes.append(node)

    for local, supers, comment in CLASSES:
        # One dict-form label to exercise the language-tag parse path.
        label = {"@language": "en", "@value": local} if local == "Country" else local
        node = {
            "@id": f"schema:{local}",
            "@type": "rdfs:Class",
            "rdfs:comment": comment,
            "rdfs:label": label,
        }
        if supers:
            node["rdfs:subClassOf"] = _refs(supers)
        nodes.append(node)

    for local, domains, ranges, comment in PROPERTIES + EXTRA_ACTIVE_PROPERTIES:
        nodes.append(
            {
                "@id": f"schema:{local}",
                "@type": "rdf:Property",
                "rdfs:comment": comment,
                "rdfs:label": local,
                "schema:domainIncludes": _refs(domains),
                "schema:rangeIncludes": _refs(ranges),
            }
        )

    for entry in PENDING:
        if entry[0] == "class":
            _, local, supers, comment = entry
            nodes.append(
                {
                    "@id": f"schema:{local}",
                    "@type": "rdfs:Class",
                    "rdfs:comment": comment,
                    "rdfs:label": local,
                    "rdfs:subClassOf": _refs(supers),
                    "schema:isPartOf": {"@id": "https://pending.schema.org"},
                }
            )
        else:
            _, local, domains, ranges, comment = entry
            nodes.append(
                {
                    "@id": f"schema:{local}",
                    "@type": "rdf:Property",
                    "rdfs:comment": comment,
                    "rdfs:label": local,
                    "schema:domainIncludes": _refs(domains),
                    "schema:rangeIncludes": _refs(ranges),
                    "schema:isPartOf": {"@id": "https://pending.schema.org"},
                }
            )

    for entry in SUPERSEDED:
        if entry[0] == "class":
            _, local, supers, comment, replacement = entry
            nodes.append(
                {
                    "@id": f"schema:{local}",
                    "@type": "rdfs:Class",
                    "rdfs:comment": comment,
                    "rdfs:label": local,
                    "rdfs:subClassOf": _refs(supers),
                    "schema:supersededBy": _ref(replacement),
                }
            )
        else:
            _, local, domains, ranges, comment, replacement = entry
            nodes.append(
                {
                    "@id": f"schema:{local}",
                    "@type": "rdf:Property",
                    "rdfs:comment": comment,
                    "rdfs:label": local,
                    "schema:domainIncludes": _refs(domains),
                    "schema:rangeIncludes": _refs(ranges),
                    "schema:supersededBy": _ref(replacement),
                }
            )

    return nodes


def check_closure(nodes: list[dict]) -> None:
    defined = {node["@id"] for node in nodes}
    problems = []
    for node in nodes:
        for key in ("rdfs:subClassOf", "schema:domainIncludes", "schema:rangeIncludes", "schema:supersededBy"):
            refs = node.get(key)
            if refs is None:
                continue
            if isinstance(refs, dict):
                refs = [refs]
            for ref in refs:
                if ref["@id"].startswith("schema:") and ref["@id"] not in defined:
                    problems.append(f"{node['@id']} {key} -> {ref['@id']}")
    if problems:
        raise SystemExit("snapshot is not reference-closed:\n  " + "\n  ".join(problems))

    labels = [n["rdfs:label"] for n in nodes]
    labels = [l["@value"] if isinstance(l, dict) else l for l in labels]
    duplicates = {l for l in labels if labels.count(l) > 1}
    if duplicates:
        raise SystemExit(f"duplicate labels in snapshot: {sorted(duplicates)}")


def main() -> None:
    nodes = build_nodes()
    check_closure(nodes)
    document = {
        "@context": {
            "rdf": "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
            "rdfs": "http://www.w3.org/2000/01/rdf-schema#",
            "schema": "https://schema.org/",
        },
        "@graph": nodes,
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(document, indent=2, ensure_ascii=False, sort_keys=True) + "\n", encoding="utf-8")
    classes = sum(1 for n in nodes if "rdfs:Class" in (n["@type"] if isinstance(n["@type"], list) else [n["@type"]]))
    print(f"wrote {OUT} ({len(nodes)} nodes, {classes} classes, {len(nodes) - classes} properties)")


if __name__ == "__main__":
    main()
